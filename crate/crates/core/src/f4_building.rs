//! The normalized F₄ root system |Φ| and the group generated by the root
//! groups of W₁ ∪ ⋯ ∪ W₄, together with the automorphisms that carve the
//! Moufang quadrangle out of it.
//!
//! Roots are unit vectors over the basis η₁, …, η₄ with coordinates in
//! ℤ + ℤ√2, written `abcd` with a prime marking a multiple of √2, so
//! `1'2'21 = √2η₁ + 2√2η₂ + 2η₃ + η₄`. Every root group is parametrized by E
//! and the commutator relations need θ but never θ⁻¹.

use crate::collect::{self, Presentation};
use crate::error::{Error, Result};
use crate::f4_space::{PolarTriple, VElem};
use crate::hahn::SqrtTwoNum;
use crate::quad_ext::{random_eelem, EElem};
use crate::quadrangle::{Quadrangle, UPlusElem};
use crate::report::{expect, expect_eq, with_inputs, CheckReport, Failure, RunConfig, Trial};
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::cell::Cell;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

type S2 = SqrtTwoNum;

const fn s2(a: i64, b: i64) -> S2 {
    SqrtTwoNum::new(a, b)
}

/// Twice the Gram matrix of η₁, …, η₄, so every entry lies in ℤ + ℤ√2.
const GRAM2: [[S2; 4]; 4] = [
    [s2(2, 0), s2(-1, 0), s2(0, 0), s2(0, 0)],
    [s2(-1, 0), s2(2, 0), s2(0, -1), s2(0, 0)],
    [s2(0, 0), s2(0, -1), s2(2, 0), s2(-1, 0)],
    [s2(0, 0), s2(0, 0), s2(-1, 0), s2(2, 0)],
];

/// A vector `aη₁ + bη₂ + cη₃ + dη₄`; the roots of |Φ| have unit length.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NRoot {
    pub coords: [SqrtTwoNum; 4],
}

impl NRoot {
    pub fn basis(i: usize) -> NRoot {
        let mut coords = [S2::ZERO; 4];
        coords[i] = S2::ONE;
        NRoot { coords }
    }

    /// Parse `abcd` notation such as `1'2'32`.
    pub fn parse(src: &str) -> Option<NRoot> {
        let mut coords = Vec::with_capacity(4);
        let mut chars = src.trim().chars().peekable();
        while let Some(c) = chars.next() {
            let m = c.to_digit(10)? as i64;
            if chars.peek() == Some(&'\'') {
                chars.next();
                coords.push(s2(0, m));
            } else {
                coords.push(s2(m, 0));
            }
        }
        Some(NRoot {
            coords: coords.try_into().ok()?,
        })
    }

    pub fn height(&self) -> S2 {
        self.coords.iter().fold(S2::ZERO, |acc, &c| acc + c)
    }

    /// `2(x, y)` under the fixed Gram matrix.
    pub fn dot2(&self, o: &NRoot) -> S2 {
        let mut acc = S2::ZERO;
        for (i, row) in GRAM2.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                if !g.is_zero() {
                    acc = acc + self.coords[i] * *g * o.coords[j];
                }
            }
        }
        acc
    }

    pub fn is_unit(&self) -> bool {
        self.dot2(self) == s2(2, 0)
    }

    /// The reflection `x ↦ x − 2(x,v)v` in a unit vector `v`.
    pub fn reflect(&self, v: &NRoot) -> NRoot {
        let k = self.dot2(v);
        NRoot {
            coords: std::array::from_fn(|i| self.coords[i] - k * v.coords[i]),
        }
    }

    pub fn neg(&self) -> NRoot {
        NRoot {
            coords: self.coords.map(|c| -c),
        }
    }

    fn plus(&self, o: &NRoot) -> NRoot {
        NRoot {
            coords: std::array::from_fn(|i| self.coords[i] + o.coords[i]),
        }
    }

    fn times_sqrt2(&self) -> NRoot {
        NRoot {
            coords: self.coords.map(|c| c.times_sqrt2()),
        }
    }

    /// Coordinate reversal `abcd ↦ dcba`.
    pub fn reversed(&self) -> NRoot {
        let [a, b, c, d] = self.coords;
        NRoot {
            coords: [d, c, b, a],
        }
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|c| c.signum() >= 0) && self.coords.iter().any(|c| !c.is_zero())
    }

    /// No coordinate mixes an integer part with a √2 part.
    pub fn is_pure(&self) -> bool {
        self.coords.iter().all(|c| c.a == 0 || c.b == 0)
    }
}

impl fmt::Display for NRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.coords {
            match (c.a, c.b) {
                (a, 0) => write!(f, "{a}")?,
                (0, b) => write!(f, "{b}'")?,
                (a, b) => write!(f, "({a}{b:+}√2)")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Angles between two unit roots, read off `2(α, β) = 2cos ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Angle {
    Zero,
    D45,
    D60,
    D90,
    D120,
    D135,
    Straight,
}

pub fn angle(a: &NRoot, b: &NRoot) -> Option<Angle> {
    let d = a.dot2(b);
    Some(match (d.a, d.b) {
        (2, 0) => Angle::Zero,
        (0, 1) => Angle::D45,
        (1, 0) => Angle::D60,
        (0, 0) => Angle::D90,
        (-1, 0) => Angle::D120,
        (0, -1) => Angle::D135,
        (-2, 0) => Angle::Straight,
        _ => return None,
    })
}

/// The sets W₀, …, W₄ as printed, in `abcd` notation.
pub const PRINTED_W: [&[&str]; 5] = [
    &["0100", "0010", "011'0", "01'10"],
    &["0001", "0011", "011'1'", "01'11", "01'21"],
    &["111'1'", "121'1'", "1'2'32", "122'1'", "132'1'"],
    &["1'1'11", "1'1'21", "232'1'", "1'2'21", "1'2'31"],
    &["1000", "1100", "1'1'10", "111'0", "121'0"],
];

/// The roots fixed by r inside W₁ ∪ ⋯ ∪ W₄.
pub const R_FIXED: [&str; 4] = ["011'1'", "1'2'32", "232'1'", "1'1'10"];

fn parse_all(names: &[&str]) -> Vec<NRoot> {
    names
        .iter()
        .map(|s| NRoot::parse(s).expect("root literal"))
        .collect()
}

fn collection_key(r: &NRoot) -> (S2, [S2; 4]) {
    (r.height(), r.coords)
}

/// The 48 roots of |Φ| with the positive system and its partition.
#[derive(Clone, Debug)]
pub struct RootSystemF4 {
    roots: Vec<NRoot>,
    positives: Vec<NRoot>,
    w: [Vec<NRoot>; 5],
}

impl RootSystemF4 {
    pub fn roots(&self) -> &[NRoot] {
        &self.roots
    }

    pub fn positives(&self) -> &[NRoot] {
        &self.positives
    }

    /// W_i in collection order.
    pub fn w(&self, i: usize) -> &[NRoot] {
        &self.w[i]
    }

    /// W₁ ∪ ⋯ ∪ W₄ in collection order (height, then coordinates).
    pub fn radical_roots(&self) -> Vec<NRoot> {
        let mut out: Vec<NRoot> = self.w[1..].iter().flatten().copied().collect();
        out.sort_by_key(collection_key);
        out
    }

    pub fn contains(&self, r: &NRoot) -> bool {
        self.roots.binary_search(r).is_ok()
    }
}

/// Close {η₁, …, η₄} under the simple reflections and sort the positive
/// roots into W₀, …, W₄.
///
/// The partition is computed, not copied: a positive root lies in W₀ when
/// its η₁ and η₄ coordinates `a`, `d` vanish, and otherwise the direction of
/// `(a, d)` picks the set. W₁ has `a = 0`, W₂ has `d = √2a`, W₃ has
/// `a = √2d` and W₄ has `d = 0`.
pub fn phi_generate() -> Result<RootSystemF4> {
    let simple: Vec<NRoot> = (0..4).map(NRoot::basis).collect();
    let mut seen: BTreeSet<NRoot> = simple.iter().copied().collect();
    let mut queue = simple.clone();
    while let Some(x) = queue.pop() {
        for s in &simple {
            let y = x.reflect(s);
            if !y.is_unit() {
                return Err(Error::ClosureFailure(format!(
                    "reflection produced {y}, not of unit length"
                )));
            }
            if !y.is_pure() {
                return Err(Error::ClosureFailure(format!(
                    "root {y} mixes integer and √2 parts"
                )));
            }
            if seen.insert(y) {
                if seen.len() > 48 {
                    return Err(Error::ClosureFailure("more than 48 roots".into()));
                }
                queue.push(y);
            }
        }
    }
    let roots: Vec<NRoot> = seen.into_iter().collect();
    if roots.len() != 48 {
        return Err(Error::ClosureFailure(format!(
            "{} roots, expected 48",
            roots.len()
        )));
    }
    let mut positives = Vec::new();
    for r in &roots {
        match (r.is_positive(), r.neg().is_positive()) {
            (true, false) => positives.push(*r),
            (false, true) => {}
            _ => {
                return Err(Error::ClosureFailure(format!(
                    "root {r} is neither positive nor negative"
                )))
            }
        }
    }
    positives.sort_by_key(collection_key);
    let mut w: [Vec<NRoot>; 5] = Default::default();
    for r in &positives {
        let [a, _, _, d] = r.coords;
        let i = if a.is_zero() && d.is_zero() {
            0
        } else if a.is_zero() {
            1
        } else if d == a.times_sqrt2() {
            2
        } else if a == d.times_sqrt2() {
            3
        } else if d.is_zero() {
            4
        } else {
            return Err(Error::ClosureFailure(format!("root {r} lies in no W_i")));
        };
        w[i].push(*r);
    }
    Ok(RootSystemF4 {
        roots,
        positives,
        w,
    })
}

/// The commutator `[ẋ_α(s), ẋ_β(t)]` as a word of root elements.
///
/// At 120° it is `ẋ_{α+β}(st)`; at 135° it is
/// `ẋ_{√2α+β}(s^θ t) ẋ_{α+√2β}(s t^θ)`; at every other angle below 180° the
/// root groups commute. `α = −β` is outside the positive setting and panics.
pub fn nroot_bracket(
    p: &PolarTriple,
    a: &NRoot,
    s: &EElem,
    b: &NRoot,
    t: &EElem,
) -> Vec<(NRoot, EElem)> {
    let word = match angle(a, b) {
        Some(Angle::D120) => vec![(a.plus(b), s * t)],
        Some(Angle::D135) => vec![
            (a.times_sqrt2().plus(b), &p.theta_e(s) * t),
            (a.plus(&b.times_sqrt2()), s * &p.theta_e(t)),
        ],
        Some(Angle::Straight) => panic!("bracket of opposite roots {a} and {b}"),
        _ => Vec::new(),
    };
    word.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Tie-break inside one height level of the collection order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CollectionOrder {
    /// Height, then coordinates left to right.
    #[default]
    HeightLex,
    /// Height, then coordinates right to left.
    HeightColex,
}

/// An element of the 20-root group in normal form: one coefficient per
/// root of W₁ ∪ ⋯ ∪ W₄, read as a product in the building's collection order.
#[derive(Clone, PartialEq)]
pub struct URElem {
    order: Arc<[NRoot]>,
    coef: Vec<EElem>,
}

impl URElem {
    pub fn coef(&self, r: &NRoot) -> Option<&EElem> {
        self.order
            .iter()
            .position(|x| x == r)
            .map(|i| &self.coef[i])
    }

    /// The nonzero factors, in collection order.
    pub fn terms(&self) -> impl Iterator<Item = (&NRoot, &EElem)> {
        self.order
            .iter()
            .zip(&self.coef)
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.coef.iter().all(EElem::is_zero)
    }

    pub fn is_overflow(&self) -> bool {
        self.coef.iter().any(EElem::is_overflow)
    }

    pub fn support(&self) -> Vec<NRoot> {
        self.terms().map(|(r, _)| *r).collect()
    }
}

impl fmt::Display for URElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.terms().map(|(r, c)| format!("x_{r}({c})")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for URElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Roots of the five factors of `X_i(u, v, t)`, carrying `u`, `β⁻¹ū`, `v`,
/// `β^{-(θ+1)}v̄` and `t` in that order.
pub const X_ROOTS: [[&str; 5]; 4] = [
    ["0011", "01'11", "0001", "01'21", "011'1'"],
    ["121'1'", "122'1'", "111'1'", "132'1'", "1'2'32"],
    ["1'1'21", "1'2'21", "1'1'11", "1'2'31", "232'1'"],
    ["1100", "111'0", "1000", "121'0", "1'1'10"],
];

/// The 20-root group over E, tied to a quadrangle over the same polar triple.
#[derive(Clone, Debug)]
pub struct F4Building {
    quad: Quadrangle,
    sys: Arc<RootSystemF4>,
    order: Arc<[NRoot]>,
    index: HashMap<NRoot, usize>,
    x_roots: [[NRoot; 5]; 4],
}

impl Deref for F4Building {
    type Target = Quadrangle;
    fn deref(&self) -> &Quadrangle {
        &self.quad
    }
}

/// One collection run. Every swap asks the root geometry for the bracket and
/// records any root that falls outside the 20-root set.
struct Collector<'a> {
    b: &'a F4Building,
    escaped: Cell<Option<NRoot>>,
}

impl Presentation for Collector<'_> {
    type Coef = EElem;

    fn rank(&self) -> usize {
        self.b.order.len()
    }

    fn zero(&self) -> EElem {
        EElem::zero(self.b.ext())
    }

    fn is_zero(&self, c: &EElem) -> bool {
        c.is_zero()
    }

    fn add(&self, a: &EElem, b: &EElem) -> EElem {
        a + b
    }

    fn swap_word(&self, q: usize, s: &EElem, p: usize, t: &EElem) -> Vec<(usize, EElem)> {
        let b = self.b;
        let mut out = Vec::new();
        for (root, c) in nroot_bracket(b.space(), &b.order[q], s, &b.order[p], t) {
            match b.index.get(&root) {
                Some(&k) => out.push((k, c)),
                None => self.escaped.set(Some(root)),
            }
        }
        out
    }
}

impl<'a> Collector<'a> {
    fn new(b: &'a F4Building) -> Self {
        Collector {
            b,
            escaped: Cell::new(None),
        }
    }

    fn finish(self, coef: Vec<EElem>) -> Result<URElem> {
        match self.escaped.get() {
            Some(r) => Err(Error::ClosureViolation(format!("bracket produced {r}"))),
            None => Ok(URElem {
                order: self.b.order.clone(),
                coef,
            }),
        }
    }
}

impl F4Building {
    pub fn new(quad: Quadrangle) -> Result<Self> {
        Self::with_order(quad, CollectionOrder::default())
    }

    pub fn with_order(quad: Quadrangle, ord: CollectionOrder) -> Result<Self> {
        let sys = Arc::new(phi_generate()?);
        let mut roots = sys.radical_roots();
        if ord == CollectionOrder::HeightColex {
            roots.sort_by_key(|r| (r.height(), r.reversed().coords));
        }
        let index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (*r, i))
            .collect::<HashMap<_, _>>();
        let x_roots = X_ROOTS.map(|names| names.map(|s| NRoot::parse(s).expect("root literal")));
        if let Some(r) = x_roots.iter().flatten().find(|r| !index.contains_key(r)) {
            return Err(Error::ClosureFailure(format!(
                "X-root {r} is not in W₁ ∪ ⋯ ∪ W₄"
            )));
        }
        Ok(F4Building {
            quad,
            sys,
            order: roots.into(),
            index,
            x_roots,
        })
    }

    pub fn standard() -> Self {
        Self::new(Quadrangle::standard()).expect("the F₄ root system closes")
    }

    /// The same group collected in another order.
    pub fn reordered(&self, ord: CollectionOrder) -> Result<Self> {
        Self::with_order(self.quad.clone(), ord)
    }

    pub fn system(&self) -> &RootSystemF4 {
        &self.sys
    }

    pub fn quadrangle(&self) -> &Quadrangle {
        &self.quad
    }

    /// The 20 roots in collection order.
    pub fn order(&self) -> &[NRoot] {
        &self.order
    }

    fn e_zero(&self) -> EElem {
        EElem::zero(self.ext())
    }

    pub fn identity(&self) -> URElem {
        URElem {
            order: self.order.clone(),
            coef: vec![self.e_zero(); self.order.len()],
        }
    }

    fn slot(&self, r: &NRoot) -> Result<usize> {
        self.index
            .get(r)
            .copied()
            .ok_or_else(|| Error::ClosureViolation(format!("{r} is not one of the 20 roots")))
    }

    pub fn root_elem(&self, r: &NRoot, t: EElem) -> Result<URElem> {
        let mut g = self.identity();
        g.coef[self.slot(r)?] = t;
        Ok(g)
    }

    /// Collect a word of root elements into normal form.
    pub fn from_word(&self, word: &[(NRoot, EElem)]) -> Result<URElem> {
        let letters = word
            .iter()
            .map(|(r, c)| Ok((self.slot(r)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        let col = Collector::new(self);
        let mut nf = collect::identity(&col);
        collect::mul_word(&col, &mut nf, &letters);
        col.finish(nf)
    }

    /// The normal form as a word, for re-collection elsewhere.
    pub fn word(&self, g: &URElem) -> Vec<(NRoot, EElem)> {
        g.terms().map(|(r, c)| (*r, c.clone())).collect()
    }

    /// `g` re-collected in this building's order.
    pub fn convert(&self, g: &URElem) -> Result<URElem> {
        self.from_word(&self.word(g))
    }

    pub fn mul(&self, g: &URElem, h: &URElem) -> Result<URElem> {
        let col = Collector::new(self);
        let nf = collect::mul(&col, &g.coef, &h.coef);
        col.finish(nf)
    }

    pub fn inv(&self, g: &URElem) -> Result<URElem> {
        let col = Collector::new(self);
        let nf = collect::inv(&col, &g.coef);
        col.finish(nf)
    }

    /// `[g, h] = g⁻¹h⁻¹gh`.
    pub fn comm(&self, g: &URElem, h: &URElem) -> Result<URElem> {
        let col = Collector::new(self);
        let nf = collect::comm(&col, &g.coef, &h.coef);
        col.finish(nf)
    }

    fn map_roots(
        &self,
        g: &URElem,
        f: impl Fn(&NRoot, &EElem) -> (NRoot, EElem),
    ) -> Result<URElem> {
        let word: Vec<_> = g.terms().map(|(r, c)| f(r, c)).collect();
        self.from_word(&word)
    }

    /// The polarity σ on the 20-root group: `ẋ_α(t) ↦ ẋ_{κ(α)}(t)`.
    pub fn kappa_apply(&self, g: &URElem) -> Result<URElem> {
        self.map_roots(g, |r, c| (r.reversed(), c.clone()))
    }

    /// The root map r = (s₀₁₀₀ s₀₀₁₀)².
    pub fn r_root(&self, x: &NRoot) -> NRoot {
        let a = NRoot::basis(1);
        let b = NRoot::basis(2);
        x.reflect(&b).reflect(&a).reflect(&b).reflect(&a)
    }

    /// ζ: `ẋ_v(t) ↦ ẋ_{r(v)}(t)`.
    pub fn r_apply(&self, g: &URElem) -> Result<URElem> {
        self.map_roots(g, |r, c| (self.r_root(r), c.clone()))
    }

    /// `∏ λᵢ^{cᵢ}` for the root `c₁c₂c₃c₄`, where a coordinate `m√2`
    /// contributes `(λᵢ^θ)^m`.
    pub fn h_multiplier(&self, lambda: &[EElem; 4], r: &NRoot) -> EElem {
        let mut m = EElem::one(self.ext());
        for (l, c) in lambda.iter().zip(r.coords) {
            let (base, e) = if c.b == 0 {
                (l.clone(), c.a)
            } else {
                (self.theta_e(l), c.b)
            };
            debug_assert!(e >= 0, "positive roots only");
            for _ in 0..e {
                m = &m * &base;
            }
        }
        m
    }

    /// The diagonal automorphism h(λ): `ẋ_α(t) ↦ ẋ_α(λ_α t)`.
    pub fn h_apply(&self, lambda: &[EElem; 4], g: &URElem) -> Result<URElem> {
        if lambda.iter().any(EElem::is_zero) {
            return Err(Error::ZeroElement);
        }
        let coef = g
            .order
            .iter()
            .zip(&g.coef)
            .map(|(r, c)| &self.h_multiplier(lambda, r) * c)
            .collect();
        Ok(URElem {
            order: g.order.clone(),
            coef,
        })
    }

    /// The parameters of the diagonal part of ξ:
    /// `(β^{-(θ+1)}, β^θ, β^θ, β^{-(θ+1)})`.
    pub fn xi_lambda(&self) -> [EElem; 4] {
        let ext = self.ext();
        let b_theta = EElem::from_k(ext, self.theta_k(self.beta()));
        let outer = EElem::from_k(ext, self.alpha() * self.beta_inv());
        [outer.clone(), b_theta.clone(), b_theta, outer]
    }

    /// ξ: `ẋ_v(t) ↦ ẋ_{r(v)}(λ_v t̄)` with λ from [`Self::xi_lambda`].
    pub fn xi_apply(&self, g: &URElem) -> Result<URElem> {
        let lambda = self.xi_lambda();
        self.map_roots(g, |r, c| {
            (self.r_root(r), &self.h_multiplier(&lambda, r) * &c.conj())
        })
    }

    pub fn x_roots(&self, i: usize) -> &[NRoot; 5] {
        &self.x_roots[i - 1]
    }

    /// `X_i(u, v, t)` for `i ∈ 1..=4`, collected to normal form.
    pub fn x_construct(&self, i: usize, x: &VElem) -> Result<URElem> {
        assert!((1..=4).contains(&i), "X_i is defined for i = 1, …, 4");
        let ext = self.ext();
        let outer = self.alpha() * self.beta_inv();
        let coefs = [
            x.u.clone(),
            &x.u.conj() * self.beta_inv(),
            x.v.clone(),
            &x.v.conj() * &outer,
            EElem::from_k(ext, x.t.clone()),
        ];
        let word: Vec<_> = self
            .x_roots(i)
            .iter()
            .copied()
            .zip(coefs)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        self.from_word(&word)
    }

    /// The product `X_1(v₁) X_2(v₂) X_3(v₃) X_4(v₄)` for an element of U₊.
    pub fn omega(&self, g: &UPlusElem) -> Result<URElem> {
        let mut out = self.identity();
        for (i, v) in g.x.iter().enumerate() {
            out = self.mul(&out, &self.x_construct(i + 1, v)?)?;
        }
        Ok(out)
    }

    /// An element with one to three nonzero coefficients on distinct roots.
    pub fn random(&self, rng: &mut (impl Rng + ?Sized), maxdeg: usize) -> URElem {
        let k = rng.gen_range(1..=3);
        let mut g = self.identity();
        for i in sample(rng, self.order.len(), k).into_iter() {
            g.coef[i] = self.random_unit(rng, maxdeg);
        }
        g
    }

    fn random_unit(&self, rng: &mut (impl Rng + ?Sized), maxdeg: usize) -> EElem {
        loop {
            let x = random_eelem(rng, self.ext(), maxdeg);
            if !x.is_zero() {
                return x;
            }
        }
    }

    fn random_v(&self, rng: &mut (impl Rng + ?Sized), maxdeg: usize) -> VElem {
        self.space().random(rng, maxdeg)
    }
}

pub fn ur_mul(b: &F4Building, g: &URElem, h: &URElem) -> Result<URElem> {
    b.mul(g, h)
}

pub fn kappa_apply(b: &F4Building, g: &URElem) -> Result<URElem> {
    b.kappa_apply(g)
}

pub fn r_apply(b: &F4Building, g: &URElem) -> Result<URElem> {
    b.r_apply(g)
}

pub fn h_apply(b: &F4Building, lambda: &[EElem; 4], g: &URElem) -> Result<URElem> {
    b.h_apply(lambda, g)
}

pub fn xi_apply(b: &F4Building, g: &URElem) -> Result<URElem> {
    b.xi_apply(g)
}

pub fn x_construct(b: &F4Building, i: usize, x: &VElem) -> Result<URElem> {
    b.x_construct(i, x)
}

fn root_set(roots: &[NRoot]) -> BTreeSet<NRoot> {
    roots.iter().copied().collect()
}

fn show_roots(roots: &BTreeSet<NRoot>) -> String {
    roots
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Structural facts about |Φ|, the W-partition, κ and r.
pub fn root_checks(b: &F4Building) -> Vec<CheckReport> {
    let sys = b.system();
    let radical = root_set(&sys.radical_roots());
    let r_fixed = root_set(&parse_all(&R_FIXED));
    vec![
        CheckReport::single("|Φ| has 48 roots, 24 of them positive", {
            expect_eq("|Φ|", &sys.roots().len(), &48)
                .and_then(|_| expect_eq("|Φ⁺|", &sys.positives().len(), &24))
                .and_then(|_| expect("every root is pure", sys.roots().iter().all(NRoot::is_pure)))
        }),
        CheckReport::single("angles between roots are classified", {
            let bad = sys
                .roots()
                .iter()
                .flat_map(|a| sys.roots().iter().map(move |c| (a, c)))
                .find(|(a, c)| angle(a, c).is_none());
            match bad {
                Some((a, c)) => Err(Failure::new(format!("no angle class for {a}, {c}"))),
                None => Ok(()),
            }
        }),
        CheckReport::single("W-partition matches the printed lists", {
            (0..5).try_for_each(|i| {
                let got = root_set(sys.w(i));
                let want = root_set(&parse_all(PRINTED_W[i]));
                if got == want {
                    Ok(())
                } else {
                    Err(Failure::new(format!(
                        "W_{i} computed as {{{}}}, printed {{{}}}",
                        show_roots(&got),
                        show_roots(&want)
                    )))
                }
            })
        }),
        CheckReport::single("κ fixes W_0 and swaps W_i with W_{5-i}", {
            (0..5).try_for_each(|i| {
                let image: BTreeSet<NRoot> = sys.w(i).iter().map(NRoot::reversed).collect();
                let target = root_set(sys.w(if i == 0 { 0 } else { 5 - i }));
                expect(&format!("κ(W_{i})"), image == target)
            })
        }),
        CheckReport::single("r fixes exactly four roots of W_1 to W_4", {
            let fixed: BTreeSet<NRoot> = radical
                .iter()
                .filter(|x| b.r_root(x) == **x)
                .copied()
                .collect();
            if fixed == r_fixed {
                Ok(())
            } else {
                Err(Failure::new(format!("r fixes {{{}}}", show_roots(&fixed))))
            }
        }),
        CheckReport::single(
            "r is an involution stabilizing each W_i and commuting with κ",
            {
                (1..5)
                    .try_for_each(|i| {
                        let image: BTreeSet<NRoot> = sys.w(i).iter().map(|x| b.r_root(x)).collect();
                        expect(&format!("r(W_{i}) = W_{i}"), image == root_set(sys.w(i)))
                    })
                    .and_then(|_| {
                        expect(
                            "r² = 1",
                            radical.iter().all(|x| b.r_root(&b.r_root(x)) == *x),
                        )
                    })
                    .and_then(|_| {
                        expect(
                            "rκ = κr",
                            radical
                                .iter()
                                .all(|x| b.r_root(&x.reversed()) == b.r_root(x).reversed()),
                        )
                    })
            },
        ),
    ]
}

fn ok_or_fail<T>(r: Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(Failure::from)
}

fn no_overflow(what: &str, g: &URElem) -> Trial {
    if g.is_overflow() {
        Err(Failure::new(format!("degree overflow in {what}")))
    } else {
        Ok(())
    }
}

/// Group-level checks: closure of collection, associativity across two
/// collection orders, the bracket table, additivity of X_i, and the
/// automorphisms h, ξ and σ.
pub fn group_checks(b: &F4Building, cfg: &RunConfig) -> Vec<CheckReport> {
    let d = cfg.max_deg;
    let alt = b.reordered(CollectionOrder::HeightColex);
    vec![
        cfg.run("collection stays inside the 20 roots", 200, |rng| {
            let (g, h) = (b.random(rng, d), b.random(rng, d));
            let gh = ok_or_fail(b.mul(&g, &h));
            with_inputs(gh.map(|_| ()), &[("g", &g), ("h", &h)])
        }),
        cfg.run(
            "multiplication is associative in two collection orders",
            50,
            |rng| {
                let alt = alt.as_ref().map_err(|e| Failure::new(e.to_string()))?;
                let (g, h, k) = (b.random(rng, d), b.random(rng, d), b.random(rng, d));
                let run = || -> Result<(URElem, URElem, URElem)> {
                    let left = b.mul(&b.mul(&g, &h)?, &k)?;
                    let right = b.mul(&g, &b.mul(&h, &k)?)?;
                    let (g2, h2, k2) = (alt.convert(&g)?, alt.convert(&h)?, alt.convert(&k)?);
                    let other = b.convert(&alt.mul(&alt.mul(&g2, &h2)?, &k2)?)?;
                    Ok((left, right, other))
                };
                let t = ok_or_fail(run()).and_then(|(left, right, other)| {
                    no_overflow("product", &left)?;
                    expect_eq("(gh)k = g(hk)", &left, &right)?;
                    expect_eq("(gh)k in the second order", &other, &left)
                });
                with_inputs(t, &[("g", &g), ("h", &h), ("k", &k)])
            },
        ),
        cfg.run(
            "commutators of root elements match the bracket rule",
            50,
            |rng| {
                let idx = sample(rng, b.order().len(), 2).into_vec();
                let (ra, rb) = (b.order()[idx[0]], b.order()[idx[1]]);
                let (s, t) = (b.random_unit(rng, d), b.random_unit(rng, d));
                let run = || -> Result<(URElem, URElem)> {
                    let got =
                        b.comm(&b.root_elem(&ra, s.clone())?, &b.root_elem(&rb, t.clone())?)?;
                    let want = b.from_word(&nroot_bracket(b.space(), &ra, &s, &rb, &t))?;
                    Ok((got, want))
                };
                let trial = ok_or_fail(run())
                    .and_then(|(got, want)| expect_eq("[x_α(s), x_β(t)]", &got, &want));
                with_inputs(trial, &[("α", &ra), ("β", &rb), ("s", &s), ("t", &t)])
            },
        ),
        cfg.run("X_i is additive", 50, |rng| {
            let (x, y) = (b.random_v(rng, d), b.random_v(rng, d));
            let t = (1..=4).try_for_each(|i| {
                let lhs = ok_or_fail(
                    b.x_construct(i, &x)
                        .and_then(|a| b.mul(&a, &b.x_construct(i, &y)?)),
                )?;
                let rhs = ok_or_fail(b.x_construct(i, &(&x + &y)))?;
                expect_eq(&format!("X_{i}(x) X_{i}(y) = X_{i}(x+y)"), &lhs, &rhs)
            });
            with_inputs(t, &[("x", &x), ("y", &y)])
        }),
        cfg.run("h(λ) h(μ) = h(λμ)", 30, |rng| {
            let lambda: [EElem; 4] = std::array::from_fn(|_| b.random_unit(rng, 1));
            let mu: [EElem; 4] = std::array::from_fn(|_| b.random_unit(rng, 1));
            let prod: [EElem; 4] = std::array::from_fn(|i| &lambda[i] * &mu[i]);
            let g = b.random(rng, d);
            let t = ok_or_fail(b.h_apply(&lambda, &g).and_then(|x| b.h_apply(&mu, &x)))
                .and_then(|lhs| Ok((lhs, ok_or_fail(b.h_apply(&prod, &g))?)))
                .and_then(|(lhs, rhs)| expect_eq("h(μ)(h(λ)(g)) = h(λμ)(g)", &lhs, &rhs));
            with_inputs(t, &[("g", &g)])
        }),
        cfg.run("ξ is an involution", 50, |rng| {
            let g = b.random(rng, d);
            let t = ok_or_fail(b.xi_apply(&g).and_then(|x| b.xi_apply(&x)))
                .and_then(|gg| expect_eq("ξ²(g) = g", &gg, &g));
            with_inputs(t, &[("g", &g)])
        }),
        cfg.run("ξ commutes with σ", 50, |rng| {
            let g = b.random(rng, d);
            let run = || -> Result<(URElem, URElem)> {
                Ok((
                    b.xi_apply(&b.kappa_apply(&g)?)?,
                    b.kappa_apply(&b.xi_apply(&g)?)?,
                ))
            };
            let t = ok_or_fail(run()).and_then(|(l, r)| expect_eq("ξσ(g) = σξ(g)", &l, &r));
            with_inputs(t, &[("g", &g)])
        }),
    ]
}

/// The comparison of the building with the quadrangle through the maps X_i:
/// trivial commutators, the [X₂, X₄] relation, the six generator
/// identities for [X₁, X₄], the full [X₁, X₄] relation against the
/// polarity algebra product and against the quadrangle itself, ξ-invariance
/// of each X_i and the action of σ.
pub fn embedding_checks(b: &F4Building, cfg: &RunConfig) -> Vec<CheckReport> {
    let d = cfg.max_deg;
    let ext = b.ext().clone();
    let zero = || b.e_zero();
    let vel = |u: EElem, v: EElem, t: crate::base_field::RatFn| VElem { u, v, t };
    let rk = |rng: &mut ChaCha8Rng| crate::base_field::random_ratfn(rng, d);
    let re = |rng: &mut ChaCha8Rng| random_eelem(rng, &ext, d);
    let kz = crate::base_field::RatFn::zero;
    let x = |i: usize, v: &VElem| ok_or_fail(b.x_construct(i, v));
    let comm = |g: &URElem, h: &URElem| ok_or_fail(b.comm(g, h));
    let mul = |g: &URElem, h: &URElem| ok_or_fail(b.mul(g, h));
    let beta_inv = b.beta_inv().clone();
    let outer = b.alpha() * b.beta_inv();
    let alpha = b.alpha().clone();

    // [X₁(x), X₄(y)] against X₂(p)X₃(q) for the generator identities.
    let generator =
        |name: &str, make: &(dyn Fn(&mut ChaCha8Rng) -> (VElem, VElem, VElem, VElem) + Sync)| {
            cfg.run(name, 50, |rng| {
                let (x1, x4, p, q) = make(rng);
                let t = (|| {
                    let got = comm(&x(1, &x1)?, &x(4, &x4)?)?;
                    let want = mul(&x(2, &p)?, &x(3, &q)?)?;
                    no_overflow("commutator", &got)?;
                    expect_eq("commutator", &got, &want)
                })();
                with_inputs(t, &[("x", &x1), ("y", &x4)])
            })
        };

    let th = |e: &EElem| b.theta_e(e);
    let thk = |k: &crate::base_field::RatFn| b.theta_k(k);

    vec![
        cfg.run("neighbouring X_i commute", 50, |rng| {
            let (u, v) = (b.random_v(rng, d), b.random_v(rng, d));
            let t = [(1, 2), (2, 3), (3, 4)].into_iter().try_for_each(|(i, j)| {
                let c = comm(&x(i, &u)?, &x(j, &v)?)?;
                expect(&format!("[X_{i}(x), X_{j}(y)] = 1"), c.is_identity())
            });
            with_inputs(t, &[("x", &u), ("y", &v)])
        }),
        // Not trivial: this is the image under σ of the [X_2, X_4] relation
        // below, and it matches [x₁(u), x₃(v)] = x₂(g(u,v)) in the quadrangle.
        cfg.run("[X_1(x), X_3(y)] = X_2(g(x,y))", 50, |rng| {
            let (u, v) = (b.random_v(rng, d), b.random_v(rng, d));
            let t = (|| {
                let got = comm(&x(1, &u)?, &x(3, &v)?)?;
                expect_eq("[X_1(x), X_3(y)]", &got, &x(2, &b.g(&u, &v))?)
            })();
            with_inputs(t, &[("x", &u), ("y", &v)])
        }),
        cfg.run("[X_2(x), X_4(y)] = X_3(0,0,f(x,y))", 50, |rng| {
            let (u, v) = (b.random_v(rng, d), b.random_v(rng, d));
            let t = (|| {
                let got = comm(&x(2, &u)?, &x(4, &v)?)?;
                let want = x(3, &VElem::radical(&ext, b.f(&u, &v)))?;
                expect_eq("[X_2(x), X_4(y)]", &got, &want)
            })();
            with_inputs(t, &[("x", &u), ("y", &v)])
        }),
        generator(
            "[X_1(a,0,0), X_4(u,0,0)] = X_2(0,a^θu,0) X_3(0,u^θa,0)",
            &|rng| {
                let (a, u) = (re(rng), re(rng));
                (
                    vel(a.clone(), zero(), kz()),
                    vel(u.clone(), zero(), kz()),
                    vel(zero(), &th(&a) * &u, kz()),
                    vel(zero(), &th(&u) * &a, kz()),
                )
            },
        ),
        generator(
            "[X_1(a,0,0), X_4(0,v,0)] = X_2(β^{-θ}ā^θv,0,0) X_3(0,β^{-1}v^θā,0)",
            &|rng| {
                let (a, v) = (re(rng), re(rng));
                (
                    vel(a.clone(), zero(), kz()),
                    vel(zero(), v.clone(), kz()),
                    vel(&(&th(&a.conj()) * &v) * &alpha, zero(), kz()),
                    vel(zero(), &(&th(&v) * &a.conj()) * &beta_inv, kz()),
                )
            },
        ),
        generator(
            "[X_1(a,0,0), X_4(0,0,s)] = X_2(0,0,sβ^{-1}N(a)) X_3(sa,0,0)",
            &|rng| {
                let (a, s) = (re(rng), rk(rng));
                (
                    vel(a.clone(), zero(), kz()),
                    vel(zero(), zero(), s.clone()),
                    vel(zero(), zero(), &(&s * &beta_inv) * &a.norm()),
                    vel(&a * &s, zero(), kz()),
                )
            },
        ),
        generator(
            "[X_1(0,b,0), X_4(0,v,0)] = X_2(β^{-(θ+1)}b^θv̄,0,0) X_3(β^{-(θ+1)}v^θb̄,0,0)",
            &|rng| {
                let (bb, v) = (re(rng), re(rng));
                (
                    vel(zero(), bb.clone(), kz()),
                    vel(zero(), v.clone(), kz()),
                    vel(&(&th(&bb) * &v.conj()) * &outer, zero(), kz()),
                    vel(&(&th(&v) * &bb.conj()) * &outer, zero(), kz()),
                )
            },
        ),
        generator(
            "[X_1(0,b,0), X_4(0,0,s)] = X_2(0,0,sβ^{-(θ+1)}N(b)) X_3(0,sb,0)",
            &|rng| {
                let (bb, s) = (re(rng), rk(rng));
                (
                    vel(zero(), bb.clone(), kz()),
                    vel(zero(), zero(), s.clone()),
                    vel(zero(), zero(), &(&s * &outer) * &bb.norm()),
                    vel(zero(), &bb * &s, kz()),
                )
            },
        ),
        generator(
            "[X_1(0,0,r), X_4(0,0,s)] = X_2(0,0,r^θs) X_3(0,0,s^θr)",
            &|rng| {
                let (r, s) = (rk(rng), rk(rng));
                (
                    vel(zero(), zero(), r.clone()),
                    vel(zero(), zero(), s.clone()),
                    vel(zero(), zero(), &thk(&r) * &s),
                    vel(zero(), zero(), &thk(&s) * &r),
                )
            },
        ),
        cfg.run(
            "[X_1(x), X_4(y)] = X_2(y·x) X_3(x·y) in the building and the quadrangle",
            50,
            |rng| {
                let (u, v) = (b.random_v(rng, d), b.random_v(rng, d));
                let t = (|| {
                    let got = comm(&x(1, &u)?, &x(4, &v)?)?;
                    no_overflow("commutator", &got)?;
                    let alg = b.algebra();
                    let want = mul(&x(2, &alg.mul(&v, &u))?, &x(3, &alg.mul(&u, &v))?)?;
                    expect_eq(
                        "building commutator against the algebra product",
                        &got,
                        &want,
                    )?;
                    let q = b.quadrangle();
                    let in_quad = q.comm(&q.root(1, u.clone()), &q.root(4, v.clone()));
                    let mapped = ok_or_fail(b.omega(&in_quad))?;
                    expect_eq(
                        "building commutator against the quadrangle commutator",
                        &got,
                        &mapped,
                    )
                })();
                with_inputs(t, &[("x", &u), ("y", &v)])
            },
        ),
        cfg.run("ξ fixes X_i(x)", 50, |rng| {
            let u = b.random_v(rng, d);
            let t = (1..=4).try_for_each(|i| {
                let g = x(i, &u)?;
                expect_eq(&format!("ξ(X_{i}(x))"), &ok_or_fail(b.xi_apply(&g))?, &g)
            });
            with_inputs(t, &[("x", &u)])
        }),
        cfg.run("σ maps X_i(x) to X_{5-i}(x)", 50, |rng| {
            let u = b.random_v(rng, d);
            let t = (1..=4).try_for_each(|i| {
                let g = ok_or_fail(b.kappa_apply(&x(i, &u)?))?;
                expect_eq(&format!("σ(X_{i}(x)) = X_{}(x)", 5 - i), &g, &x(5 - i, &u)?)
            });
            with_inputs(t, &[("x", &u)])
        }),
    ]
}

/// Everything the building suite runs.
pub fn building_checks(b: &F4Building, cfg: &RunConfig) -> Vec<CheckReport> {
    let mut out = root_checks(b);
    out.extend(group_checks(b, cfg));
    out.extend(embedding_checks(b, cfg));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn r(s: &str) -> NRoot {
        NRoot::parse(s).unwrap()
    }

    #[test]
    fn notation_round_trips() {
        for s in ["1'2'21", "0100", "232'1'", "011'0"] {
            assert_eq!(r(s).to_string(), s);
        }
        let x = r("1'2'21");
        assert_eq!(x.coords, [s2(0, 1), s2(0, 2), s2(2, 0), s2(1, 0)]);
        assert!(x.is_unit());
    }

    #[test]
    fn root_system_sizes() {
        let sys = phi_generate().unwrap();
        assert_eq!(sys.roots().len(), 48);
        assert_eq!(sys.positives().len(), 24);
        assert_eq!(root_set(sys.w(0)), root_set(&parse_all(PRINTED_W[0])));
        assert!(sys.w(2).contains(&r("1'2'32")));
        assert_eq!(sys.radical_roots().len(), 20);
    }

    #[test]
    fn bracket_rules_by_angle() {
        let b = F4Building::standard();
        let ext = b.ext().clone();
        let s = EElem::gamma(&ext);
        let t = EElem::from_k(&ext, crate::base_field::RatFn::alpha());
        // 90°: η₁ ⟂ η₃
        assert!(nroot_bracket(b.space(), &r("1000"), &s, &r("0010"), &t).is_empty());
        // 135°: η₂, η₃
        let w = nroot_bracket(b.space(), &r("0100"), &s, &r("0010"), &t);
        assert_eq!(w.len(), 2);
        assert_eq!(w[0], (r("01'10"), &b.theta_e(&s) * &t));
        assert_eq!(w[1], (r("011'0"), &s * &b.theta_e(&t)));
        // 120°: η₃, η₄
        let w = nroot_bracket(b.space(), &r("0010"), &s, &r("0001"), &t);
        assert_eq!(w, vec![(r("0011"), &s * &t)]);
    }

    #[test]
    fn h_multiplier_example() {
        let b = F4Building::standard();
        let ext = b.ext().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let l: [EElem; 4] = std::array::from_fn(|_| b.random_unit(&mut rng, 1));
        let th = |e: &EElem| b.theta_e(e);
        let want = &(&(&th(&l[0]) * &th(&l[1]).square()) * &l[2].square()) * &l[3];
        assert_eq!(b.h_multiplier(&l, &r("1'2'21")), want);
        let ones: [EElem; 4] = std::array::from_fn(|_| EElem::one(&ext));
        let g = b.random(&mut rng, 2);
        assert_eq!(b.h_apply(&ones, &g).unwrap(), g);
    }

    #[test]
    fn r_fixes_the_printed_roots() {
        let b = F4Building::standard();
        for s in R_FIXED {
            assert_eq!(b.r_root(&r(s)), r(s));
        }
        assert_ne!(b.r_root(&r("0011")), r("0011"));
    }

    #[test]
    fn x1_support_on_first_slot() {
        let b = F4Building::standard();
        let ext = b.ext().clone();
        let u = EElem::gamma(&ext);
        let x = VElem {
            u: u.clone(),
            v: EElem::zero(&ext),
            t: crate::base_field::RatFn::zero(),
        };
        let g = b.x_construct(1, &x).unwrap();
        assert_eq!(root_set(&g.support()), root_set(&[r("0011"), r("01'11")]));
        assert_eq!(g.coef(&r("0011")), Some(&u));
        assert_eq!(g.coef(&r("01'11")), Some(&(&u.conj() * b.beta_inv())));
        assert!(b.x_construct(3, &b.space().zero()).unwrap().is_identity());
    }

    #[test]
    fn x1_and_x3_do_not_commute() {
        let b = F4Building::standard();
        let ext = b.ext().clone();
        let u = VElem {
            u: EElem::one(&ext),
            v: EElem::zero(&ext),
            t: crate::base_field::RatFn::zero(),
        };
        let v = VElem {
            u: EElem::gamma(&ext),
            v: EElem::zero(&ext),
            t: crate::base_field::RatFn::zero(),
        };
        let c = b
            .comm(
                &b.x_construct(1, &u).unwrap(),
                &b.x_construct(3, &v).unwrap(),
            )
            .unwrap();
        assert!(!c.is_identity());
        assert_eq!(c, b.x_construct(2, &b.g(&u, &v)).unwrap());
    }

    /// In [X_1(0,b,0), X_4(0,v,0)] the X_3 factor carries v^θ b̄; the
    /// symmetric-looking v^θ v̄ is wrong.
    #[test]
    fn x3_factor_of_the_middle_identity_uses_b_bar() {
        let b = F4Building::standard();
        let ext = b.ext().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (bb, v) = (b.random_unit(&mut rng, 1), b.random_unit(&mut rng, 1));
        let z = || EElem::zero(&ext);
        let k0 = crate::base_field::RatFn::zero;
        let outer = b.alpha() * b.beta_inv();
        let got = b
            .comm(
                &b.x_construct(
                    1,
                    &VElem {
                        u: z(),
                        v: bb.clone(),
                        t: k0(),
                    },
                )
                .unwrap(),
                &b.x_construct(
                    4,
                    &VElem {
                        u: z(),
                        v: v.clone(),
                        t: k0(),
                    },
                )
                .unwrap(),
            )
            .unwrap();
        let x2 = b
            .x_construct(
                2,
                &VElem {
                    u: &(&b.theta_e(&bb) * &v.conj()) * &outer,
                    v: z(),
                    t: k0(),
                },
            )
            .unwrap();
        let with = |w: &EElem| {
            let x3 = b
                .x_construct(
                    3,
                    &VElem {
                        u: &(&b.theta_e(&v) * &w.conj()) * &outer,
                        v: z(),
                        t: k0(),
                    },
                )
                .unwrap();
            b.mul(&x2, &x3).unwrap()
        };
        assert_eq!(got, with(&bb));
        assert_ne!(got, with(&v));
    }

    #[test]
    fn root_checks_pass() {
        let b = F4Building::standard();
        for rep in root_checks(&b) {
            assert!(rep.ok(), "{rep}");
        }
    }

    #[test]
    fn embedding_checks_pass_at_degree_one() {
        let b = F4Building::standard();
        let cfg = RunConfig::new(5, 1).with_trials(3);
        for rep in group_checks(&b, &cfg)
            .into_iter()
            .chain(embedding_checks(&b, &cfg))
        {
            assert!(rep.ok(), "{rep}");
        }
    }
}
