//! Dependency-free SVG rendering of a trajectory: a single polyline of
//! u = (x - x0)/x0 against tau = t/t*, with axis labels and range ticks.

use casimir_oscillator::Trajectory64;

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;

pub fn polyline_plot(traj: &Trajectory64) -> String {
    let (u_min, u_max) = traj.u_range();
    let t_min = *traj.times.first().unwrap_or(&0.0);
    let t_max = *traj.times.last().unwrap_or(&1.0);
    let u_span = if u_max > u_min { u_max - u_min } else { 1.0 };
    let t_span = if t_max > t_min { t_max - t_min } else { 1.0 };

    let x_of = |t: f64| MARGIN + (t - t_min) / t_span * (WIDTH - 2.0 * MARGIN);
    let y_of = |u: f64| HEIGHT - MARGIN - (u - u_min) / u_span * (HEIGHT - 2.0 * MARGIN);

    let mut path = String::new();
    for i in 0..traj.len() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        path.push_str(&format!(
            "{cmd}{:.2} {:.2} ",
            x_of(traj.times[i]),
            y_of(traj.u[i])
        ));
    }

    let mut svg = String::new();
    svg.push_str(&format!(
        r#"<svg version="1.1" width="{WIDTH}" height="{HEIGHT}" xmlns="http://www.w3.org/2000/svg">"#
    ));
    svg.push('\n');
    svg.push_str(r#"<rect width="100%" height="100%" fill="white"/>"#);
    svg.push('\n');
    // Frame.
    svg.push_str(&format!(
        r#"<rect x="{M}" y="{M}" width="{w:.2}" height="{h:.2}" fill="none" stroke="black"/>"#,
        M = MARGIN,
        w = WIDTH - 2.0 * MARGIN,
        h = HEIGHT - 2.0 * MARGIN
    ));
    svg.push('\n');
    svg.push_str(&format!(
        r#"<path d="{}" fill="none" stroke="steelblue" stroke-width="1.5"/>"#,
        path.trim_end()
    ));
    svg.push('\n');
    // Axis labels and extreme ticks.
    svg.push_str(&format!(
        r#"<text x="{:.0}" y="{:.0}" text-anchor="middle" font-family="monospace" font-size="14">t / t*</text>"#,
        WIDTH / 2.0,
        HEIGHT - 14.0
    ));
    svg.push('\n');
    svg.push_str(&format!(
        r#"<text x="16" y="{:.0}" text-anchor="middle" font-family="monospace" font-size="14" transform="rotate(-90 16 {:.0})">(x - x0) / x0</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    ));
    svg.push('\n');
    for (value, x, y, anchor) in [
        (t_min, x_of(t_min), HEIGHT - MARGIN + 18.0, "start"),
        (t_max, x_of(t_max), HEIGHT - MARGIN + 18.0, "end"),
    ] {
        svg.push_str(&format!(
            r#"<text x="{x:.1}" y="{y:.1}" text-anchor="{anchor}" font-family="monospace" font-size="12">{value:.3}</text>"#
        ));
        svg.push('\n');
    }
    for (value, y) in [(u_max, MARGIN + 4.0), (u_min, HEIGHT - MARGIN)] {
        svg.push_str(&format!(
            r#"<text x="{x:.1}" y="{y:.1}" text-anchor="end" font-family="monospace" font-size="12">{value:.3e}</text>"#,
            x = MARGIN - 6.0
        ));
        svg.push('\n');
    }
    svg.push_str("</svg>\n");
    svg
}
