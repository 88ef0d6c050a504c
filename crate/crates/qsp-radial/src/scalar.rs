//! Exact scalar arithmetic: Laurent polynomials and rational functions in
//! `u = q^{1/2}`, the spectral symbols `z_t = q^{lambda_t}`, and any number of
//! free parameter symbols.
//!
//! Exponents are stored *doubled* so that half-integer powers of every symbol
//! stay integral: a stored exponent `n` on an axis denotes the `n/2`-th power
//! of that axis's symbol.  Axis `0` is always `u`; the surrounding context
//! decides how the remaining axes split between spectral symbols and free
//! parameters.
//!
//! [`RatFunc`] is kept fully canonical at all times: numerator and denominator
//! are coprime (via a hand-rolled primitive-PRS multivariate gcd), the pair is
//! jointly cornered so the per-axis minimum exponent over both is zero (which
//! pushes negative powers into the denominator as a monomial factor), and the
//! denominator is monic in the lexicographic term order.  Equality of rational
//! functions is therefore plain structural equality, which is what lets every
//! identity in the crate be decided exactly.

use std::cmp::Ordering;
use std::collections::HashMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use smallvec::SmallVec;

/// Exponent vector of a monomial, trailing zeros trimmed.
///
/// Entries are doubled exponents; `ExpVec` itself is agnostic about the
/// halving and only does integer vector arithmetic.  The ordering is
/// lexicographic with axis `0` (the `u` axis) most significant, comparing
/// missing entries as zero; on cornered polynomials this is a genuine monomial
/// order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ExpVec(SmallVec<[i32; 4]>);

impl ExpVec {
    /// The exponent vector of the constant monomial `1`.
    pub fn unit() -> Self {
        ExpVec(SmallVec::new())
    }

    pub fn from_slice(exps: &[i32]) -> Self {
        let mut v = ExpVec(SmallVec::from_slice(exps));
        v.trim();
        v
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn get(&self, axis: usize) -> i32 {
        self.0.get(axis).copied().unwrap_or(0)
    }

    pub fn set(&mut self, axis: usize, value: i32) {
        if axis >= self.0.len() {
            if value == 0 {
                return;
            }
            self.0.resize(axis + 1, 0);
        }
        self.0[axis] = value;
        self.trim();
    }

    /// Number of stored axes (trailing zero axes do not count).
    pub fn axes(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        let n = self.0.len().max(other.0.len());
        let mut out: SmallVec<[i32; 4]> = SmallVec::with_capacity(n);
        for i in 0..n {
            out.push(self.get(i) + other.get(i));
        }
        let mut v = ExpVec(out);
        v.trim();
        v
    }

    pub fn sub(&self, other: &ExpVec) -> ExpVec {
        let n = self.0.len().max(other.0.len());
        let mut out: SmallVec<[i32; 4]> = SmallVec::with_capacity(n);
        for i in 0..n {
            out.push(self.get(i) - other.get(i));
        }
        let mut v = ExpVec(out);
        v.trim();
        v
    }

    pub fn neg(&self) -> ExpVec {
        ExpVec(self.0.iter().map(|&e| -e).collect())
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            match self.get(i).cmp(&other.get(i)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

fn rat_pow(base: &BigRational, exp: i32) -> BigRational {
    if exp == 0 {
        return BigRational::one();
    }
    let mut b = if exp < 0 { base.recip() } else { base.clone() };
    let mut e = exp.unsigned_abs();
    let mut acc = BigRational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    acc
}

/// Multivariate Laurent polynomial with exact rational coefficients.
///
/// Terms are kept sorted in strictly descending [`ExpVec`] order with no zero
/// coefficients, so the first term is the leading term and equality is
/// structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LaurentPoly {
    terms: Vec<(ExpVec, BigRational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly {
                terms: vec![(ExpVec::unit(), c)],
            }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn monomial(exp: ExpVec, c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly {
                terms: vec![(exp, c)],
            }
        }
    }

    /// Terms in descending monomial order; the first is the leading term.
    pub fn terms(&self) -> &[(ExpVec, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_unit() && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_unit())
    }

    fn leading(&self) -> (&ExpVec, &BigRational) {
        let t = self.terms.first().expect("leading term of zero polynomial");
        (&t.0, &t.1)
    }

    fn collect(map: HashMap<ExpVec, BigRational>) -> Self {
        let mut terms: Vec<(ExpVec, BigRational)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        LaurentPoly { terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                Ordering::Greater => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        terms.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        LaurentPoly { terms }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.is_monomial() {
            return self.mul_monomial(&other.terms[0].0, &other.terms[0].1);
        }
        if self.is_monomial() {
            return other.mul_monomial(&self.terms[0].0, &self.terms[0].1);
        }
        let mut map: HashMap<ExpVec, BigRational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.add(eb);
                let c = ca * cb;
                match map.entry(e) {
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += c;
                    }
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                }
            }
        }
        Self::collect(map)
    }

    pub fn mul_monomial(&self, exp: &ExpVec, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.add(exp), k * c))
                .collect(),
        }
    }

    pub fn mul_rat(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k * c))
                .collect(),
        }
    }

    /// Multiply by the monomial `x^delta` (shift every exponent).
    pub fn shift(&self, delta: &ExpVec) -> Self {
        if delta.is_unit() {
            return self.clone();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.add(delta), c.clone()))
                .collect(),
        }
    }

    /// Per-axis minimum exponent over all terms (the corner of the Newton
    /// polytope).  The zero polynomial has an empty corner.
    pub fn corner(&self) -> ExpVec {
        let mut out = ExpVec::unit();
        let mut first = true;
        for (e, _) in &self.terms {
            if first {
                out = e.clone();
                first = false;
            } else {
                let n = out.axes().max(e.axes());
                let mut v: SmallVec<[i32; 4]> = SmallVec::with_capacity(n);
                for i in 0..n {
                    v.push(out.get(i).min(e.get(i)));
                }
                out = ExpVec(v);
                out.trim();
            }
        }
        out
    }

    /// Strip the monomial corner factor; returns the cornered polynomial and
    /// the corner it removed.
    fn cornered(&self) -> (Self, ExpVec) {
        let c = self.corner();
        if c.is_unit() {
            (self.clone(), c)
        } else {
            (self.shift(&c.neg()), c)
        }
    }

    pub fn max_exp_in(&self, axis: usize) -> Option<i32> {
        self.terms.iter().map(|(e, _)| e.get(axis)).max()
    }

    pub fn min_exp_in(&self, axis: usize) -> Option<i32> {
        self.terms.iter().map(|(e, _)| e.get(axis)).min()
    }

    /// Number of axes any term touches.
    pub fn axes(&self) -> usize {
        self.terms.iter().map(|(e, _)| e.axes()).max().unwrap_or(0)
    }

    /// Exact division in the Laurent ring: `Some(quot)` with
    /// `quot * b == self`, or `None` when `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        assert!(!b.is_zero(), "exact division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (a, ca) = self.cornered();
        let (b, cb) = b.cornered();
        let (lb, lcb) = {
            let (e, c) = b.leading();
            (e.clone(), c.clone())
        };
        let mut r = a;
        let mut q: Vec<(ExpVec, BigRational)> = Vec::new();
        while !r.is_zero() {
            let (m, c) = {
                let (e, k) = r.leading();
                (e.sub(&lb), k / &lcb)
            };
            if !m.is_nonneg() {
                return None;
            }
            r = r.sub(&b.mul_monomial(&m, &c));
            q.push((m, c));
        }
        // the quotient terms came out in strictly descending order already
        let quot = LaurentPoly { terms: q };
        Some(quot.shift(&ca.sub(&cb)))
    }

    /// Coefficients of the powers of axis `v`, as polynomials in the other
    /// axes, in descending degree order.
    fn coeffs_in(&self, v: usize) -> Vec<(i32, LaurentPoly)> {
        let mut map: HashMap<i32, Vec<(ExpVec, BigRational)>> = HashMap::new();
        for (e, c) in &self.terms {
            let d = e.get(v);
            let mut e2 = e.clone();
            e2.set(v, 0);
            map.entry(d).or_default().push((e2, c.clone()));
        }
        let mut out: Vec<(i32, LaurentPoly)> = map
            .into_iter()
            .map(|(d, mut ts)| {
                ts.sort_by(|a, b| b.0.cmp(&a.0));
                (d, LaurentPoly { terms: ts })
            })
            .collect();
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out
    }

    fn leading_coeff_in(&self, v: usize) -> LaurentPoly {
        let d = self
            .max_exp_in(v)
            .expect("leading coefficient of zero polynomial");
        let mut ts: Vec<(ExpVec, BigRational)> = self
            .terms
            .iter()
            .filter(|(e, _)| e.get(v) == d)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2.set(v, 0);
                (e2, c.clone())
            })
            .collect();
        ts.sort_by(|a, b| b.0.cmp(&a.0));
        LaurentPoly { terms: ts }
    }

    /// Evaluate with `point[i]` the value of the *half-power* symbol of axis
    /// `i`: a stored exponent `n` contributes `point[i]^n`.  Values for used
    /// axes must be nonzero whenever negative exponents occur.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for axis in 0..e.axes() {
                let n = e.get(axis);
                if n != 0 {
                    let p = point.get(axis).expect("evaluation point missing an axis");
                    v *= rat_pow(p, n);
                }
            }
            total += v;
        }
        total
    }

    pub fn render(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || e.is_unit() {
                parts.push(abs.to_string());
            }
            for axis in 0..e.axes() {
                let n = e.get(axis);
                if n == 0 {
                    continue;
                }
                let name: String = names
                    .get(axis)
                    .map(|s| s.to_string())
                    .unwrap_or_else(|| format!("x{}", axis));
                parts.push(render_power(&name, n));
            }
            out.push_str(&parts.join("*"));
        }
        out
    }
}

fn render_power(name: &str, doubled: i32) -> String {
    if doubled == 2 {
        return name.to_string();
    }
    if doubled % 2 == 0 {
        return format!("{}^{}", name, doubled / 2);
    }
    format!("{}^({}/2)", name, doubled)
}

/// Greatest common divisor in the Laurent polynomial ring, returned cornered
/// and monic (leading coefficient one).  Monomials are units of the Laurent
/// ring, so any two nonzero monomials have gcd `1`; monomial content is the
/// business of [`RatFunc`]'s joint cornering, not of the gcd.
pub fn mgcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return normalize_gcd(b);
    }
    if b.is_zero() {
        return normalize_gcd(a);
    }
    let (a, _) = a.cornered();
    let (b, _) = b.cornered();
    if a.is_monomial() || b.is_monomial() {
        return LaurentPoly::one();
    }
    if a == b {
        return normalize_gcd(&a);
    }
    // quick divisibility probes cover the frequent nested-denominator cases
    if a.div_exact(&b).is_some() {
        return normalize_gcd(&b);
    }
    if b.div_exact(&a).is_some() {
        return normalize_gcd(&a);
    }
    // main variable: an axis shared by both, of least combined degree, keeps
    // the remainder sequence short; with no shared axis the gcd is constant
    let axes = a.axes().max(b.axes());
    let mut v = None;
    let mut best = i32::MAX;
    for axis in 0..axes {
        let da = a.max_exp_in(axis).unwrap_or(0);
        let db = b.max_exp_in(axis).unwrap_or(0);
        if da > 0 && db > 0 {
            let cost = da + db;
            if cost < best {
                best = cost;
                v = Some(axis);
            }
        }
    }
    let v = match v {
        Some(v) => v,
        None => return LaurentPoly::one(),
    };
    let (ca, pa) = content_primitive(&a, v);
    let (cb, pb) = content_primitive(&b, v);
    let d = mgcd(&ca, &cb);
    let (mut r0, mut r1) = if pa.max_exp_in(v) >= pb.max_exp_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    while !r1.is_zero() {
        let r = prem(&r0, &r1, v);
        r0 = r1;
        r1 = if r.is_zero() {
            r
        } else {
            content_primitive(&r, v).1
        };
    }
    normalize_gcd(&d.mul(&r0))
}

/// Content (gcd of the coefficients of powers of `v`) and primitive part.
fn content_primitive(p: &LaurentPoly, v: usize) -> (LaurentPoly, LaurentPoly) {
    let mut c = LaurentPoly::zero();
    for (_, coeff) in p.coeffs_in(v) {
        c = mgcd(&c, &coeff);
        if c.is_one() {
            return (c, p.clone());
        }
    }
    let pp = p.div_exact(&c).expect("content divides its polynomial");
    (c, pp)
}

/// Lazy pseudo-remainder of `a` by `b` with respect to axis `v`: the result
/// may pick up extraneous content, which the caller strips.
fn prem(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let db = b.max_exp_in(v).expect("pseudo-remainder by zero");
    let lcb = b.leading_coeff_in(v);
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let dr = r.max_exp_in(v).unwrap();
        if dr < db {
            return r;
        }
        let lcr = r.leading_coeff_in(v);
        let mut step = ExpVec::unit();
        step.set(v, dr - db);
        r = r.mul(&lcb).sub(&b.mul(&lcr).shift(&step));
    }
}

fn normalize_gcd(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return LaurentPoly::zero();
    }
    let (p, _) = p.cornered();
    let lc = p.leading().1.clone();
    if lc.is_one() {
        p
    } else {
        p.mul_rat(&lc.recip())
    }
}

/// Rational function in canonical form: numerator and denominator are coprime
/// ordinary polynomials (negative powers live in the denominator as a
/// monomial), the pair is jointly cornered, and the denominator is monic in
/// the lexicographic term order.  Structural equality decides mathematical
/// equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc {
            num: LaurentPoly::from_int(n),
            den: LaurentPoly::one(),
        }
    }

    pub fn rat(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::from_poly_pair(LaurentPoly::from_int(n), LaurentPoly::from_int(d))
    }

    pub fn from_rat(c: BigRational) -> Self {
        RatFunc {
            num: LaurentPoly::constant(c),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self::from_poly_pair(p, LaurentPoly::one())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    /// Fully canonicalize an arbitrary numerator/denominator pair.
    pub fn from_poly_pair(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = mgcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::corner_monic(num, den)
    }

    /// Re-impose joint cornering and the monic denominator on a pair already
    /// known to be coprime up to monomial factors.
    fn corner_monic(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let cn = num.corner();
        let cd = den.corner();
        let n = cn.axes().max(cd.axes());
        let mut joint: SmallVec<[i32; 4]> = SmallVec::with_capacity(n);
        for i in 0..n {
            joint.push(cn.get(i).min(cd.get(i)));
        }
        let mut joint = ExpVec(joint);
        joint.trim();
        let (mut num, mut den) = if joint.is_unit() {
            (num, den)
        } else {
            let d = joint.neg();
            (num.shift(&d), den.shift(&d))
        };
        let lc = den.leading().1.clone();
        if !lc.is_one() {
            let r = lc.recip();
            num = num.mul_rat(&r);
            den = den.mul_rat(&r);
        }
        RatFunc { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if num.is_zero() {
                return Self::zero();
            }
            // the sum may have picked up a factor of the shared denominator
            return Self::from_poly_pair(num, self.den.clone());
        }
        let g = mgcd(&self.den, &other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            if num.is_zero() {
                return Self::zero();
            }
            return Self::corner_monic(num, self.den.mul(&other.den));
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = other.den.div_exact(&g).expect("gcd divides");
        let t = self.num.mul(&d1).add(&other.num.mul(&b1));
        if t.is_zero() {
            return Self::zero();
        }
        let h = mgcd(&t, &g);
        let (t, g) = if h.is_one() {
            (t, g)
        } else {
            (
                t.div_exact(&h).expect("gcd divides"),
                g.div_exact(&h).expect("gcd divides"),
            )
        };
        Self::corner_monic(t, b1.mul(&d1).mul(&g))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let g1 = mgcd(&self.num, &other.den);
        let g2 = mgcd(&other.num, &self.den);
        let a = if g1.is_one() {
            self.num.clone()
        } else {
            self.num.div_exact(&g1).expect("gcd divides")
        };
        let d = if g1.is_one() {
            other.den.clone()
        } else {
            other.den.div_exact(&g1).expect("gcd divides")
        };
        let c = if g2.is_one() {
            other.num.clone()
        } else {
            other.num.div_exact(&g2).expect("gcd divides")
        };
        let b = if g2.is_one() {
            self.den.clone()
        } else {
            self.den.div_exact(&g2).expect("gcd divides")
        };
        Self::corner_monic(a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::corner_monic(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: i32) -> Self {
        if e == 0 {
            return Self::one();
        }
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Monomial `u^{uh/2} * prod_t z_t^{zh[t]/2}` in doubled exponents:
    /// `qpow(2, &[])` is `q`, and `qpow(4, &[8])` is `q^2 z^4`.
    pub fn qpow(u_halves: i64, z_halves: &[i64]) -> Self {
        let mut e = ExpVec::unit();
        e.set(0, i32::try_from(u_halves).expect("exponent overflow"));
        for (t, &h) in z_halves.iter().enumerate() {
            e.set(1 + t, i32::try_from(h).expect("exponent overflow"));
        }
        Self::from_poly_pair(LaurentPoly::monomial(e, BigRational::one()), LaurentPoly::one())
    }

    /// Monomial on a single axis: `axis_pow(0, 2)` is `q`, and
    /// `axis_pow(3, 1)` is the square root of the axis-3 symbol.
    pub fn axis_pow(axis: usize, halves: i64) -> Self {
        let mut e = ExpVec::unit();
        e.set(axis, i32::try_from(halves).expect("exponent overflow"));
        Self::from_poly_pair(LaurentPoly::monomial(e, BigRational::one()), LaurentPoly::one())
    }

    /// Evaluate at a rational point; `None` when the denominator vanishes.
    /// As for [`LaurentPoly::eval`], `point[i]` is the value of the
    /// half-power symbol of axis `i`.
    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    pub fn render(&self, names: &[&str]) -> String {
        if self.num.is_zero() {
            return "0".to_string();
        }
        if self.den.is_one() {
            return self.num.render(names);
        }
        if self.den.is_monomial() {
            // the monic monomial denominator folds into the numerator as
            // negative powers
            let e = self.den.terms[0].0.neg();
            return self.num.shift(&e).render(names);
        }
        format!("({}) / ({})", self.num.render(names), self.den.render(names))
    }
}

/// Quantum integer `[n]_v = (v^n - v^{-n})/(v - v^{-1})`, with `v` the axis-0
/// power of doubled exponent `v_exp`: `v_exp = 2` gives `[n]_q`.
pub fn quantum_int(n: u32, v_exp: i64) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for k in 0..n {
        let mut e = ExpVec::unit();
        let h = v_exp * (i64::from(n) - 1 - 2 * i64::from(k));
        e.set(0, i32::try_from(h).expect("exponent overflow"));
        p = p.add(&LaurentPoly::monomial(e, BigRational::one()));
    }
    p
}

/// Quantum binomial coefficient `[n choose m]_v`, a Laurent polynomial.
pub fn qbinom(n: u32, m: u32, v_exp: i64) -> LaurentPoly {
    assert!(m <= n, "binomial out of range");
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for j in 1..=m {
        num = num.mul(&quantum_int(n - m + j, v_exp));
        den = den.mul(&quantum_int(j, v_exp));
    }
    num.div_exact(&den)
        .expect("quantum binomial is a Laurent polynomial")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> RatFunc {
        RatFunc::qpow(2, &[])
    }

    fn qi() -> RatFunc {
        RatFunc::qpow(-2, &[])
    }

    #[test]
    fn product_of_conjugates() {
        let lhs = q().sub(&qi()).mul(&q().add(&qi()));
        let rhs = RatFunc::qpow(4, &[]).sub(&RatFunc::qpow(-4, &[]));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_quotients() {
        let q2 = RatFunc::qpow(4, &[]);
        let lhs = q2.sub(&RatFunc::one()).div(&q().sub(&RatFunc::one()));
        assert_eq!(lhs, q().add(&RatFunc::one()));
        let z4 = RatFunc::qpow(0, &[8]);
        let z2 = RatFunc::qpow(0, &[4]);
        assert_eq!(
            z4.sub(&RatFunc::one()).div(&z2.sub(&RatFunc::one())),
            z2.add(&RatFunc::one())
        );
    }

    #[test]
    fn render_texture() {
        let names = ["q", "z"];
        assert_eq!(q().render(&names), "q");
        assert_eq!(RatFunc::qpow(4, &[8]).render(&names), "q^2*z^4");
        assert_eq!(qi().render(&names), "q^-1");
        assert_eq!(RatFunc::qpow(1, &[]).render(&names), "q^(1/2)");
        assert_eq!(RatFunc::qpow(-3, &[]).render(&names), "q^(-3/2)");
        assert_eq!(q().sub(&qi()).render(&names), "q - q^-1");
        assert_eq!(RatFunc::zero().render(&names), "0");
        assert_eq!(RatFunc::rat(-3, 2).render(&names), "-3/2");
        let f = RatFunc::one().div(&q().sub(&RatFunc::one()));
        assert_eq!(f.render(&names), "(1) / (q - 1)");
    }

    #[test]
    fn quantum_binomials() {
        assert_eq!(
            RatFunc::from_poly(qbinom(3, 1, 2)),
            q().pow(2).add(&RatFunc::one()).add(&qi().pow(2))
        );
        let expect = RatFunc::qpow(8, &[])
            .add(&RatFunc::qpow(4, &[]))
            .add(&RatFunc::from_int(2))
            .add(&RatFunc::qpow(-4, &[]))
            .add(&RatFunc::qpow(-8, &[]));
        assert_eq!(RatFunc::from_poly(qbinom(4, 2, 2)), expect);
        assert_eq!(qbinom(5, 0, 2), LaurentPoly::one());
        assert_eq!(qbinom(5, 5, 2), LaurentPoly::one());
    }

    #[test]
    fn division_failure_is_detected() {
        let a = q().add(&RatFunc::one());
        let b = q().sub(&RatFunc::one());
        assert!(a.num().div_exact(b.num()).is_none());
    }

    #[test]
    fn canonical_zero() {
        let z = q().sub(&q());
        assert!(z.is_zero());
        assert_eq!(z, RatFunc::zero());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec(((-4..5i32, -4..5i32), -5..6i64), 0..5).prop_map(|ts| {
            let mut p = LaurentPoly::zero();
            for ((e0, e1), c) in ts {
                p = p.add(&LaurentPoly::monomial(
                    ExpVec::from_slice(&[e0, e1]),
                    BigRational::from_integer(BigInt::from(c)),
                ));
            }
            p
        })
    }

    fn arb_rf() -> impl Strategy<Value = RatFunc> {
        (arb_poly(), arb_poly()).prop_map(|(n, d)| {
            let d = if d.is_zero() { LaurentPoly::one() } else { d };
            RatFunc::from_poly_pair(n, d)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_rf(), b in arb_rf(), c in arb_rf()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.sub(&a), RatFunc::zero());
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv()), RatFunc::one());
            }
        }

        #[test]
        fn canonical_form_is_stable(a in arb_rf(), m in arb_poly()) {
            if !m.is_zero() {
                let n2 = a.num().mul(&m);
                let d2 = a.den().mul(&m);
                prop_assert_eq!(RatFunc::from_poly_pair(n2, d2), a);
            }
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_rf(), b in arb_rf()) {
            let pt = [
                BigRational::new(BigInt::from(3), BigInt::from(2)),
                BigRational::new(BigInt::from(5), BigInt::from(3)),
            ];
            if let (Some(va), Some(vb)) = (a.eval(&pt), b.eval(&pt)) {
                let vs = a.add(&b).eval(&pt).expect("sum denominator nonzero");
                prop_assert_eq!(vs, &va + &vb);
                let vp = a.mul(&b).eval(&pt).expect("product denominator nonzero");
                prop_assert_eq!(vp, &va * &vb);
            }
        }

        #[test]
        fn gcd_divides_products(a in arb_poly(), b in arb_poly(), g in arb_poly()) {
            if !a.is_zero() && !b.is_zero() && !g.is_zero() {
                let ag = a.mul(&g);
                let bg = b.mul(&g);
                let d = mgcd(&ag, &bg);
                prop_assert!(ag.div_exact(&d).is_some());
                prop_assert!(bg.div_exact(&d).is_some());
                prop_assert!(d.div_exact(&g).is_some());
            }
        }
    }
}
