//! Derivative-free minimization of convex functions of one variable.

/// Golden-section ratio `(√5 − 1) / 2`.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Bracket width at which the golden-section phase stops.
pub const GOLDEN_WIDTH: f64 = 1e-12;

/// Result of a one-dimensional minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
}

/// Minimizes a convex `f` on `[lo, hi]`.
///
/// Golden-section search shrinks the bracket to [`GOLDEN_WIDTH`]; a
/// three-point parabolic step then refines the estimate and is kept only
/// if it lowers the value. Valid for piecewise-linear `f` as well.
pub fn golden_section<F>(f: F, lo: f64, hi: f64) -> Minimum
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    // bounded: each pass shrinks by 0.618, so ~200 passes reach any width
    for _ in 0..400 {
        if b - a <= GOLDEN_WIDTH {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }

    let mut best = if fc <= fd {
        Minimum { x: c, value: fc }
    } else {
        Minimum { x: d, value: fd }
    };
    for x in [a, b] {
        let v = f(x);
        if v < best.value {
            best = Minimum { x, value: v };
        }
    }

    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    if let Some(x) = parabola_vertex(a, fa, m, fm, b, fb) {
        if x > a && x < b {
            let v = f(x);
            if v < best.value {
                best = Minimum { x, value: v };
            }
        }
    }
    best
}

/// Abscissa of the vertex of the parabola through three points.
fn parabola_vertex(x0: f64, f0: f64, x1: f64, f1: f64, x2: f64, f2: f64) -> Option<f64> {
    let p = (x1 - x0) * (f1 - f2);
    let q = (x1 - x2) * (f1 - f0);
    let den = 2.0 * (p - q);
    if den == 0.0 || !den.is_finite() {
        return None;
    }
    let x = x1 - ((x1 - x0) * p - (x1 - x2) * q) / den;
    x.is_finite().then_some(x)
}
