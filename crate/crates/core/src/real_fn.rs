//! Piecewise functions on compact intervals and the fixed gallery of
//! functions `f₁, f₂, f₃, f, g, h`.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock};

use crate::cantor::{cantor_unchecked, DEFAULT_CANTOR_DIGITS};
use crate::error::{check_domain, Error, Result};

/// Maximum jump tolerated between adjacent pieces at a shared endpoint.
pub const CONTINUITY_TOLERANCE: f64 = 1e-12;

static ALPHA: LazyLock<f64> = LazyLock::new(|| 2f64.ln() / 3f64.ln());

/// Hölder exponent of the Cantor function, `log 2 / log 3`.
pub fn alpha() -> f64 {
    *ALPHA
}

/// `x^α` with the argument clamped into `[0, 1]`.
pub(crate) fn power_alpha(x: f64) -> f64 {
    x.clamp(0.0, 1.0).powf(alpha())
}

pub fn f2_eval(x: f64) -> Result<f64> {
    let x = check_domain("f2", x, 0.0, 1.0)?;
    Ok(power_alpha(x))
}

/// `f₃(x) = 1 − f₂(1 − x)`.
pub fn f3_eval(x: f64) -> Result<f64> {
    let x = check_domain("f3", x, 0.0, 1.0)?;
    Ok(1.0 - power_alpha(1.0 - x))
}

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::Precondition(format!(
                "invalid interval [{lo}, {hi}]"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Building block evaluated on a transformed argument.
#[derive(Debug, Clone)]
pub enum Primitive {
    /// Cantor staircase on `[0, 1]`, evaluated with the given ternary digit budget.
    Cantor {
        digits: u32,
    },
    /// `t ↦ t^exponent` on `[0, 1]`, `exponent ∈ (0, 1]`.
    Power(f64),
    Identity,
    /// A nested piecewise function, evaluated on its own domain.
    Composite(Arc<PiecewiseFn>),
}

impl Primitive {
    fn eval(&self, t: f64) -> f64 {
        match self {
            Primitive::Cantor { digits } => cantor_unchecked(t.clamp(0.0, 1.0), *digits),
            Primitive::Power(exponent) => t.clamp(0.0, 1.0).powf(*exponent),
            Primitive::Identity => t,
            Primitive::Composite(inner) => {
                let d = inner.domain();
                inner.eval_clamped(t.clamp(d.lo, d.hi))
            }
        }
    }

    /// Whether the primitive is Lipschitz on its natural domain.
    pub fn is_lipschitz(&self) -> bool {
        match self {
            Primitive::Cantor { .. } => false,
            Primitive::Power(exponent) => *exponent >= 1.0,
            Primitive::Identity => true,
            Primitive::Composite(inner) => inner.pieces.iter().all(|p| p.primitive.is_lipschitz()),
        }
    }
}

/// Affine change of variables around a primitive `p`:
///
/// ```text
/// t = (x − in_shift) · in_scale,   t ← 1 − t if in_reflect
/// v = p(t),                        v ← 1 − v if out_reflect
/// value = out_offset + out_scale · v
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transform {
    pub in_shift: f64,
    pub in_scale: f64,
    pub in_reflect: bool,
    pub out_scale: f64,
    pub out_offset: f64,
    pub out_reflect: bool,
}

impl Default for Transform {
    fn default() -> Self {
        Transform {
            in_shift: 0.0,
            in_scale: 1.0,
            in_reflect: false,
            out_scale: 1.0,
            out_offset: 0.0,
            out_reflect: false,
        }
    }
}

impl Transform {
    /// `x ↦ offset + p(x − shift)`, the form used by every unit piece of `f` and `g`.
    pub fn shifted(shift: f64, offset: f64) -> Self {
        Transform {
            in_shift: shift,
            out_offset: offset,
            ..Transform::default()
        }
    }

    pub fn with_reflections(mut self, input: bool, output: bool) -> Self {
        self.in_reflect = input;
        self.out_reflect = output;
        self
    }
}

#[derive(Debug, Clone)]
pub struct Piece {
    pub sub: Interval,
    pub primitive: Primitive,
    pub transform: Transform,
}

impl Piece {
    pub fn new(sub: Interval, primitive: Primitive, transform: Transform) -> Self {
        Piece {
            sub,
            primitive,
            transform,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let tr = &self.transform;
        let mut t = (x - tr.in_shift) * tr.in_scale;
        if tr.in_reflect {
            t = 1.0 - t;
        }
        let mut v = self.primitive.eval(t);
        if tr.out_reflect {
            v = 1.0 - v;
        }
        tr.out_offset + tr.out_scale * v
    }

    /// Lipschitz constant of the piece, when it has one.
    pub fn lipschitz_constant(&self) -> Option<f64> {
        let tr = &self.transform;
        let inner = match &self.primitive {
            Primitive::Identity | Primitive::Power(_) if self.primitive.is_lipschitz() => 1.0,
            Primitive::Composite(inner) => inner.lipschitz_constant()?,
            _ => return None,
        };
        Some((tr.in_scale * tr.out_scale).abs() * inner)
    }
}

/// A continuous function on a compact interval assembled from pieces whose
/// subdomains tile the domain. At a shared endpoint the left piece is used.
#[derive(Debug, Clone)]
pub struct PiecewiseFn {
    domain: Interval,
    pieces: Vec<Piece>,
    monotone_nondecreasing: bool,
}

impl PiecewiseFn {
    /// Validates tiling and continuity at the interior boundaries.
    pub fn new(pieces: Vec<Piece>, monotone_nondecreasing: bool) -> Result<Self> {
        let (first, last) = match (pieces.first(), pieces.last()) {
            (Some(first), Some(last)) => (first, last),
            _ => {
                return Err(Error::Precondition(
                    "a piecewise function needs at least one piece".into(),
                ))
            }
        };
        let domain = Interval::new(first.sub.lo, last.sub.hi)?;
        for pair in pieces.windows(2) {
            let (left, right) = (&pair[0], &pair[1]);
            if left.sub.hi != right.sub.lo {
                return Err(Error::Precondition(format!(
                    "pieces {} and {} do not share an endpoint",
                    left.sub, right.sub
                )));
            }
            let at = left.sub.hi;
            let jump = (left.eval(at) - right.eval(at)).abs();
            if !(jump <= CONTINUITY_TOLERANCE) {
                return Err(Error::Consistency {
                    check: "continuity at piece boundary",
                    left: left.eval(at),
                    right: right.eval(at),
                    tolerance: CONTINUITY_TOLERANCE,
                });
            }
        }
        Ok(PiecewiseFn {
            domain,
            pieces,
            monotone_nondecreasing,
        })
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_monotone_nondecreasing(&self) -> bool {
        self.monotone_nondecreasing
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let x = check_domain("piecewise function", x, self.domain.lo, self.domain.hi)?;
        Ok(self.eval_clamped(x))
    }

    /// Evaluation for arguments already known to lie in the domain.
    pub(crate) fn eval_clamped(&self, x: f64) -> f64 {
        let idx = self.pieces.partition_point(|p| p.sub.hi < x);
        self.pieces[idx.min(self.pieces.len() - 1)].eval(x)
    }

    /// Evaluates with the right-hand piece at a shared endpoint.
    pub fn eval_right(&self, x: f64) -> Result<f64> {
        let x = check_domain("piecewise function", x, self.domain.lo, self.domain.hi)?;
        let idx = self.pieces.partition_point(|p| p.sub.hi <= x);
        Ok(self.pieces[idx.min(self.pieces.len() - 1)].eval(x))
    }

    /// Interior breakpoints, in increasing order.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.pieces.iter().skip(1).map(|p| p.sub.lo).collect()
    }

    /// Largest Lipschitz constant among the pieces, or `None` if some piece is not Lipschitz.
    pub fn lipschitz_constant(&self) -> Option<f64> {
        self.pieces
            .iter()
            .map(Piece::lipschitz_constant)
            .try_fold(0.0f64, |acc, c| c.map(|c| acc.max(c)))
    }

    /// Continuous piecewise-linear interpolant through `knots`, sorted by strictly increasing `x`.
    pub fn piecewise_linear(knots: &[(f64, f64)]) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::Precondition(
                "piecewise-linear function needs two knots".into(),
            ));
        }
        let mut pieces = Vec::with_capacity(knots.len() - 1);
        let mut monotone = true;
        for w in knots.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if !(x1 > x0) || !y0.is_finite() || !y1.is_finite() {
                return Err(Error::Precondition(format!(
                    "knots must have increasing x, got {x0} then {x1}"
                )));
            }
            monotone &= y1 >= y0;
            let transform = Transform {
                in_shift: x0,
                in_scale: 1.0 / (x1 - x0),
                out_scale: y1 - y0,
                out_offset: y0,
                ..Transform::default()
            };
            pieces.push(Piece::new(
                Interval::new(x0, x1)?,
                Primitive::Identity,
                transform,
            ));
        }
        PiecewiseFn::new(pieces, monotone)
    }
}

fn unit(k: u32) -> Interval {
    Interval {
        lo: f64::from(k),
        hi: f64::from(k + 1),
    }
}

fn cantor() -> Primitive {
    Primitive::Cantor {
        digits: DEFAULT_CANTOR_DIGITS,
    }
}

fn power() -> Primitive {
    Primitive::Power(alpha())
}

/// `offset + f₂(x − k)` on `[k, k+1]`.
fn f2_piece(k: u32, offset: f64) -> Piece {
    Piece::new(unit(k), power(), Transform::shifted(f64::from(k), offset))
}

/// `offset + f₃(x − k)` on `[k, k+1]`.
fn f3_piece(k: u32, offset: f64) -> Piece {
    let transform = Transform::shifted(f64::from(k), offset).with_reflections(true, true);
    Piece::new(unit(k), power(), transform)
}

fn cantor_piece(k: u32, offset: f64) -> Piece {
    Piece::new(unit(k), cantor(), Transform::shifted(f64::from(k), offset))
}

fn with_middle(middle: Piece) -> PiecewiseFn {
    let pieces = vec![
        f3_piece(0, 0.0),
        f2_piece(1, 1.0),
        middle,
        f3_piece(3, 3.0),
        f2_piece(4, 4.0),
        f2_piece(5, 5.0),
        f2_piece(6, 6.0),
    ];
    PiecewiseFn::new(pieces, true).expect("gallery function tiles [0, 7]")
}

/// The monotone, non-absolutely-continuous function on `[0, 7]` with a Cantor piece on `[2, 3]`.
pub fn build_f() -> PiecewiseFn {
    with_middle(cantor_piece(2, 2.0))
}

/// `f` with its Cantor piece replaced by the identity.
pub fn build_g() -> PiecewiseFn {
    with_middle(Piece::new(
        unit(2),
        Primitive::Identity,
        Transform::default(),
    ))
}

/// Non-monotone example on `[0, 2]`: `f₂(x)` then `f₁(2 − x)`.
pub fn build_h() -> PiecewiseFn {
    let pieces = vec![
        Piece::new(unit(0), power(), Transform::default()),
        Piece::new(
            unit(1),
            cantor(),
            Transform::shifted(1.0, 0.0).with_reflections(true, false),
        ),
    ];
    PiecewiseFn::new(pieces, false).expect("h tiles [0, 2]")
}

pub fn build_cantor() -> PiecewiseFn {
    PiecewiseFn::new(
        vec![Piece::new(unit(0), cantor(), Transform::default())],
        true,
    )
    .expect("single piece")
}

pub fn build_f2() -> PiecewiseFn {
    PiecewiseFn::new(vec![f2_piece(0, 0.0)], true).expect("single piece")
}

pub fn build_f3() -> PiecewiseFn {
    PiecewiseFn::new(vec![f3_piece(0, 0.0)], true).expect("single piece")
}

pub fn build_identity(domain: Interval) -> PiecewiseFn {
    PiecewiseFn::new(
        vec![Piece::new(
            domain,
            Primitive::Identity,
            Transform::default(),
        )],
        true,
    )
    .expect("single piece")
}

pub(crate) static G: LazyLock<PiecewiseFn> = LazyLock::new(build_g);
pub(crate) static F: LazyLock<PiecewiseFn> = LazyLock::new(build_f);

/// The named gallery exposed on the command line and through the C ABI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedFn {
    F,
    G,
    H,
    F1,
    F2,
    F3,
}

impl NamedFn {
    pub const ALL: [NamedFn; 6] = [
        NamedFn::F,
        NamedFn::G,
        NamedFn::H,
        NamedFn::F1,
        NamedFn::F2,
        NamedFn::F3,
    ];

    pub fn build(self) -> PiecewiseFn {
        match self {
            NamedFn::F => build_f(),
            NamedFn::G => build_g(),
            NamedFn::H => build_h(),
            NamedFn::F1 => build_cantor(),
            NamedFn::F2 => build_f2(),
            NamedFn::F3 => build_f3(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedFn::F => "f",
            NamedFn::G => "g",
            NamedFn::H => "h",
            NamedFn::F1 => "f1",
            NamedFn::F2 => "f2",
            NamedFn::F3 => "f3",
        }
    }
}

impl fmt::Display for NamedFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedFn::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| {
                Error::Precondition(format!(
                    "unknown function `{s}` (expected f, g, h, f1, f2 or f3)"
                ))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn f2_and_f3_values() {
        assert_eq!(f2_eval(0.0).unwrap(), 0.0);
        assert_eq!(f2_eval(1.0).unwrap(), 1.0);
        // exp(−α log 2)
        let oracle = (-alpha() * 2f64.ln()).exp();
        assert!(close(f2_eval(0.5).unwrap(), oracle, 1e-15));
        assert!(close(f2_eval(0.5).unwrap(), 0.6458, 1e-4));
        assert_eq!(f3_eval(0.0).unwrap(), 0.0);
        assert_eq!(f3_eval(1.0).unwrap(), 1.0);
        assert!(close(f3_eval(0.5).unwrap(), 1.0 - oracle, 1e-15));
        assert!(close(f3_eval(0.5).unwrap(), 0.3542, 1e-4));
        assert!(f2_eval(1.5).is_err());
        assert!(f3_eval(-0.1).is_err());
    }

    #[test]
    fn f_values() {
        let f = build_f();
        assert_eq!(f.eval(0.0).unwrap(), 0.0);
        assert!(close(f.eval(1.0).unwrap(), 1.0, 1e-15));
        assert_eq!(f.eval(2.5).unwrap(), 2.5);
        assert!(close(f.eval(7.0).unwrap(), 7.0, 1e-15));
        assert!(f.eval(7.1).is_err());
        assert!(f.is_monotone_nondecreasing());
    }

    #[test]
    fn g_values() {
        let g = build_g();
        assert_eq!(g.eval(2.5).unwrap(), 2.5);
        assert_eq!(g.eval(3.0).unwrap(), 3.0);
        assert!(close(g.eval(0.5).unwrap(), f3_eval(0.5).unwrap(), 1e-15));
        assert!(close(g.eval(7.0).unwrap(), 7.0, 1e-15));
    }

    #[test]
    fn h_values() {
        let h = build_h();
        assert!(close(h.eval(1.0).unwrap(), 1.0, 1e-15));
        assert_eq!(h.eval(2.0).unwrap(), 0.0);
        assert_eq!(h.eval(5.0 / 3.0).unwrap(), 0.5);
        assert_eq!(h.eval(1.5).unwrap(), 0.5);
        assert!(!h.is_monotone_nondecreasing());
    }

    #[test]
    fn left_and_right_evaluation_agree_at_breakpoints() {
        for fun in [build_f(), build_g(), build_h()] {
            for b in fun.breakpoints() {
                let l = fun.eval(b).unwrap();
                let r = fun.eval_right(b).unwrap();
                assert!(close(l, r, CONTINUITY_TOLERANCE), "{b}: {l} vs {r}");
            }
        }
    }

    #[test]
    fn rejects_gaps_and_jumps() {
        let a = Piece::new(
            Interval::new(0.0, 1.0).unwrap(),
            Primitive::Identity,
            Transform::default(),
        );
        let gap = Piece::new(
            Interval::new(1.5, 2.0).unwrap(),
            Primitive::Identity,
            Transform::default(),
        );
        assert!(PiecewiseFn::new(vec![a.clone(), gap], true).is_err());
        let jump = Piece::new(
            Interval::new(1.0, 2.0).unwrap(),
            Primitive::Identity,
            Transform::shifted(0.0, 0.5),
        );
        assert!(matches!(
            PiecewiseFn::new(vec![a, jump], true),
            Err(Error::Consistency { .. })
        ));
        assert!(PiecewiseFn::new(vec![], true).is_err());
        assert!(Interval::new(1.0, 0.0).is_err());
    }

    #[test]
    fn composite_piece_evaluates_inner_function() {
        let inner = Arc::new(build_f3());
        let piece = Piece::new(
            unit(3),
            Primitive::Composite(inner),
            Transform::shifted(3.0, 3.0),
        );
        let g = build_g();
        for x in [3.0, 3.2, 3.5, 3.99, 4.0] {
            assert!(close(piece.eval(x), g.eval(x).unwrap(), 1e-15));
        }
    }

    #[test]
    fn piecewise_linear_sawtooth() {
        let saw = PiecewiseFn::piecewise_linear(&[(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)]).unwrap();
        assert_eq!(saw.eval(0.25).unwrap(), 0.5);
        assert_eq!(saw.eval(0.5).unwrap(), 1.0);
        assert_eq!(saw.eval(1.0).unwrap(), 0.0);
        assert_eq!(saw.lipschitz_constant(), Some(2.0));
        assert!(!saw.is_monotone_nondecreasing());
        assert_eq!(build_f().lipschitz_constant(), None);
        assert!(PiecewiseFn::piecewise_linear(&[(0.0, 0.0), (0.0, 1.0)]).is_err());
    }

    #[test]
    fn named_gallery_parses() {
        for n in NamedFn::ALL {
            assert_eq!(n.name().parse::<NamedFn>().unwrap(), n);
        }
        assert!("k".parse::<NamedFn>().is_err());
    }
}
