//! Sparse multivariate Laurent polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Ring;

/// Exponent vector of a Laurent monomial; entries may be negative.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of `x1`, then `x2`, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExpVec(pub Vec<i32>);

impl ExpVec {
    pub fn zero(n: usize) -> Self {
        ExpVec(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExpVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn sub(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of `C[x1^±1, …, xn^±1]`.
///
/// No zero coefficient is ever stored, so structural equality is equality of
/// polynomials. Terms iterate in descending graded-lex order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly<C> {
    nvars: usize,
    terms: BTreeMap<ExpVec, C>,
}

impl<C: Ring> LaurentPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(ExpVec::zero(nvars), c)
    }

    /// The variable `x_i`, with `i` counted from 1.
    pub fn variable(nvars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "variable x{i} out of range 1..={nvars}");
        Self::monomial(ExpVec::unit(nvars, i - 1), C::one())
    }

    pub fn monomial(exp: ExpVec, c: C) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i32>, C)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::VariableMismatch(nvars, e.len()));
            }
            p.add_term(ExpVec(e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| e.0.iter().all(|&x| x == 0) && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (descending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &C)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exp: &[i32]) -> C {
        self.terms.get(&ExpVec(exp.to_vec())).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading_term(&self) -> Option<(&ExpVec, &C)> {
        self.terms.iter().next_back()
    }

    pub fn trailing_term(&self) -> Option<(&ExpVec, &C)> {
        self.terms.iter().next()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn add_term(&mut self, exp: ExpVec, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(exp, s);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn mul_term(&self, exp: &ExpVec, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, a) in &self.terms {
            out.add_term(e.add(exp), a.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / den`.
    ///
    /// Repeatedly cancels the leading term of the remainder. Every quotient
    /// monomial `m` satisfies `tt(self)/tt(den) <= m <= lt(self)/lt(den)`, so a
    /// candidate below the lower bound, a non-dividing coefficient, or a
    /// nonzero remainder means the division is not exact.
    pub fn exact_div(&self, den: &Self) -> Result<Self> {
        self.check_same(den)?;
        let (den_lead_e, den_lead_c) = den.leading_term().ok_or(Error::DivisionByZero)?;
        let not_divisible = || Error::NotDivisible { num: self.to_string(), den: den.to_string() };
        let mut quotient = Self::zero(self.nvars);
        let Some((num_tail, _)) = self.trailing_term() else {
            return Ok(quotient);
        };
        let (den_tail, _) = den.trailing_term().expect("nonzero");
        let lower = num_tail.sub(den_tail);
        let mut rem = self.clone();
        while let Some((re, rc)) = rem.leading_term() {
            let qe = re.sub(den_lead_e);
            if qe < lower {
                return Err(not_divisible());
            }
            let qc = rc.div_exact(den_lead_c).ok_or_else(not_divisible)?;
            rem = &rem - &den.mul_term(&qe, &qc);
            quotient.add_term(qe, qc);
        }
        Ok(quotient)
    }

    /// Componentwise minimum exponent over all terms (zero vector for 0).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut m: Option<Vec<i32>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.0.clone(),
                Some(cur) => cur.iter().zip(&e.0).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Canonical string using `var` as the variable letter.
    pub fn format_with(&self, var: char) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mono = format_monomial(&e.0, var);
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }

    /// Human-oriented form with a common monomial denominator, e.g.
    /// `(x1 + x3)/x2`.
    pub fn fraction_string(&self) -> String {
        let den: Vec<i32> = self.min_exponents().iter().map(|&m| (-m).max(0)).collect();
        if den.iter().all(|&d| d == 0) {
            return self.to_string();
        }
        let numerator = self.mul_term(&ExpVec(den.clone()), &C::one());
        let num_s = numerator.to_string();
        let num_s = if numerator.len() > 1 { format!("({num_s})") } else { num_s };
        let factors = den.iter().filter(|&&d| d > 0).count();
        let den_s = format_monomial(&den, 'x');
        if factors > 1 || den.iter().any(|&d| d > 1) {
            format!("{num_s}/({den_s})")
        } else {
            format!("{num_s}/{den_s}")
        }
    }
}

fn format_monomial(e: &[i32], var: char) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| if x == 1 { format!("{var}{}", i + 1) } else { format!("{var}{}^{x}", i + 1) })
        .collect::<Vec<_>>()
        .join("*")
}

impl<C: Ring + FromStr> LaurentPoly<C> {
    /// Parses the canonical grammar (`x1^-1*x4 + 2*x2`). Term order and
    /// whitespace are not significant; repeated variables multiply.
    pub fn parse(s: &str, nvars: usize) -> Result<Self> {
        Self::parse_with(s, nvars, 'x')
    }

    pub fn parse_with(s: &str, nvars: usize, var: char) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bad = |msg: &str| Error::Parse(format!("{msg} in `{s}`"));
        // split into signed terms; a '-' right after '^' belongs to an exponent
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') {
                if cur.is_empty() {
                    // only a single leading sign may precede the first term
                    if prev.is_some() {
                        return Err(bad("misplaced sign"));
                    }
                } else {
                    terms.push((neg, std::mem::take(&mut cur)));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        if cur.is_empty() {
            return Err(bad("trailing sign"));
        }
        terms.push((neg, cur));

        let mut p = Self::zero(nvars);
        for (neg, t) in terms {
            let mut coeff = C::one();
            let mut exp = vec![0i32; nvars];
            for factor in t.split('*') {
                if factor.is_empty() {
                    return Err(bad("empty factor"));
                }
                if let Some(rest) = factor.strip_prefix(var) {
                    let (idx, e) = match rest.split_once('^') {
                        Some((i, e)) => (i, e.parse::<i32>().map_err(|_| bad("bad exponent"))?),
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad("bad variable index"))?;
                    if idx == 0 || idx > nvars {
                        return Err(bad(&format!("variable {var}{idx} out of range")));
                    }
                    exp[idx - 1] += e;
                } else {
                    let c: C = factor.parse().map_err(|_| bad("bad coefficient"))?;
                    coeff = coeff * c;
                }
            }
            if neg {
                coeff = -coeff;
            }
            p.add_term(ExpVec(exp), coeff);
        }
        Ok(p)
    }
}

/// Serialized as the canonical string.
impl<C: Ring> serde::Serialize for LaurentPoly<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<C: Ring> Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with('x'))
    }
}

impl<C: Ring> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        self.checked_add(rhs).expect("Laurent polynomials over different variable sets")
    }
}

impl<C: Ring> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        self.checked_sub(rhs).expect("Laurent polynomials over different variable sets")
    }
}

impl<C: Ring> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        self.checked_mul(rhs).expect("Laurent polynomials over different variable sets")
    }
}

impl<C: Ring> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

/// Polynomial with non-negative exponents in `y1, …, yn`; the value domain of
/// F-polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct YPoly<C>(LaurentPoly<C>);

impl<C: Ring> YPoly<C> {
    pub fn new(p: LaurentPoly<C>) -> Result<Self> {
        if p.terms.keys().any(|e| e.0.iter().any(|&x| x < 0)) {
            return Err(Error::Parse(format!("negative exponent in y-polynomial `{}`", p.format_with('y'))));
        }
        Ok(YPoly(p))
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
    {
        let p = LaurentPoly::from_terms(
            nvars,
            terms.into_iter().map(|(e, c)| (e.into_iter().map(|x| x as i32).collect(), c)),
        )?;
        Ok(YPoly(p))
    }

    /// `y^e` for a dimension vector `e`.
    pub fn y_power(e: &[usize]) -> Self {
        YPoly(LaurentPoly::monomial(ExpVec(e.iter().map(|&x| x as i32).collect()), C::one()))
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars
    }

    pub fn as_laurent(&self) -> &LaurentPoly<C> {
        &self.0
    }

    pub fn coeff(&self, e: &[usize]) -> C {
        self.0.coeff(&e.iter().map(|&x| x as i32).collect::<Vec<_>>())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        Ok(YPoly(self.0.checked_mul(&other.0)?))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Ok(YPoly(self.0.checked_add(&other.0)?))
    }

    /// Evaluates at `y_i ↦ subs[i]`.
    pub fn substitute(&self, subs: &[LaurentPoly<C>]) -> Result<LaurentPoly<C>> {
        if subs.len() != self.nvars() {
            return Err(Error::LengthMismatch { expected: self.nvars(), got: subs.len() });
        }
        let target = subs.first().map_or(0, |s| s.nvars);
        if let Some(bad) = subs.iter().find(|s| s.nvars != target) {
            return Err(Error::VariableMismatch(target, bad.nvars));
        }
        let mut out = LaurentPoly::zero(target);
        for (e, c) in self.0.terms() {
            let mut term = LaurentPoly::constant(target, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    term = &term * &subs[i].pow(k as u32);
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }
}

impl<C: Ring + FromStr> YPoly<C> {
    pub fn parse(s: &str, nvars: usize) -> Result<Self> {
        YPoly::new(LaurentPoly::parse_with(s, nvars, 'y')?)
    }
}

impl<C: Ring> Display for YPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.format_with('y'))
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::Laurent;

    fn lp(s: &str, n: usize) -> Laurent {
        Laurent::parse(s, n).unwrap()
    }

    #[test]
    fn addition_examples() {
        assert!(lp("x1", 1).checked_add(&lp("-x1", 1)).unwrap().is_zero());
        assert_eq!(&lp("1 + x2", 2) + &lp("x1", 2), lp("1 + x1 + x2", 2));
        assert_eq!(&lp("1 + x1", 1) + &lp("1 + x1", 1), lp("2 + 2*x1", 1));
        assert!(matches!(lp("x1", 1).checked_add(&lp("x1", 2)), Err(Error::VariableMismatch(1, 2))));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(&lp("x1 + x2", 2) * &lp("x1 - x2", 2), lp("x1^2 - x2^2", 2));
        assert_eq!(&lp("1 + x1", 1) * &lp("1 + x1", 1), lp("1 + 2*x1 + x1^2", 1));
        // (1+x1)x2^-1 * (1+x2)x1^-1, expanded by hand
        let a = lp("x2^-1 + x1*x2^-1", 2);
        let b = lp("x1^-1 + x1^-1*x2", 2);
        assert_eq!(&a * &b, lp("x1^-1*x2^-1 + x2^-1 + x1^-1 + 1", 2));
        assert!(lp("x1", 1).checked_mul(&lp("x1", 3)).is_err());
    }

    #[test]
    fn exact_division_examples() {
        let q = lp("1 + x1 + x2 + x1*x2", 2).exact_div(&lp("1 + x1", 2)).unwrap();
        assert_eq!(q, lp("1 + x2", 2));
        let q = lp("x2 + 1", 2).exact_div(&lp("x1", 2)).unwrap();
        assert_eq!(q, lp("x1^-1*x2 + x1^-1", 2));
        assert!(matches!(
            lp("1 + x1 + x2", 2).exact_div(&lp("1 + x2", 2)),
            Err(Error::NotDivisible { .. })
        ));
        assert!(matches!(lp("x1", 2).exact_div(&Laurent::zero(2)), Err(Error::DivisionByZero)));
        assert!(matches!(lp("3*x1", 1).exact_div(&lp("2", 1)), Err(Error::NotDivisible { .. })));
        assert!(Laurent::zero(2).exact_div(&lp("x1", 2)).unwrap().is_zero());
    }

    #[test]
    fn canonical_string() {
        let p = lp("2*x2 + x1^-1*x4", 4);
        assert_eq!(p.to_string(), "2*x2 + x1^-1*x4");
        assert_eq!(lp("-1 + x1^2 - 3*x1*x2^-1", 2).to_string(), "x1^2 - 3*x1*x2^-1 - 1");
        assert_eq!(Laurent::zero(3).to_string(), "0");
        assert_eq!(lp("-x1", 1).to_string(), "-x1");
        assert_eq!(lp("1", 2).to_string(), "1");
        assert_eq!(lp("x1*x1*x2^-1*x2", 2), lp("x1^2", 2));
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "x0", "x5", "x1^", "2**x1", "x1 +", "x1 + - x2", "y1"] {
            assert!(Laurent::parse(bad, 4).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn fraction_form() {
        assert_eq!(lp("x1*x2^-1 + x3*x2^-1", 3).fraction_string(), "(x1 + x3)/x2");
        assert_eq!(lp("x1^-1", 2).fraction_string(), "1/x1");
        assert_eq!(lp("1 + x1 + x2", 2).fraction_string(), "x1 + x2 + 1");
        assert_eq!(
            lp("x1^-1*x2^-1 + x2^-1 + x1^-1", 2).fraction_string(),
            "(x1 + x2 + 1)/(x1*x2)"
        );
    }

    #[test]
    fn substitution_examples() {
        let f = YPoly::<BigInt>::parse("1 + y1", 1).unwrap();
        assert_eq!(f.substitute(&[lp("x2^-1", 2)]).unwrap(), lp("1 + x2^-1", 2));
        let g = YPoly::<BigInt>::parse("y1*y2", 2).unwrap();
        let s = g.substitute(&[lp("x2^-1", 3), lp("x1*x3^-1", 3)]).unwrap();
        assert_eq!(s, lp("x1*x2^-1*x3^-1", 3));
        assert!(matches!(g.substitute(&[lp("x1", 1)]), Err(Error::LengthMismatch { expected: 2, got: 1 })));
        assert!(YPoly::<BigInt>::parse("y1^-1", 1).is_err());
        assert_eq!(f.to_string(), "y1 + 1");
    }
}
