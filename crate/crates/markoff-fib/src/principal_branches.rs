//! The constant families: alpha values, their Markoff values, and the
//! branches of k-Fibonacci triples they generate.
//!
//! For k >= 1 and r >= 1 let alpha = (L_k(r)^2 - 2(-1)^r) / 3, an exact
//! rational that is an integer precisely when r is odd and 3 does not
//! divide k.  In the integer case the triples (alpha, F_k(n-r), F_k(n+r))
//! all share the Markoff value
//! m = alpha^2 + (-1)^(n-r) (F_k(r) L_k(r))^2,
//! independent of n, and consecutive triples are linked by the middle
//! Vieta move v2.  This module computes alpha and m, classifies a family
//! member at a given index, walks the branches, locates the minimal tree
//! roots the branches descend to, and enumerates every family triple up
//! to a bound.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::k_sequences::{fib, lucas};
use crate::markoff_core::{
    descend_to_root, is_minimal, order_triple, vieta2, vieta3, OrderedTriple, Triple,
};

/// Failure modes for family and branch constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BranchError {
    #[error("k must be a positive integer")]
    ZeroK,
    #[error("r must be a positive integer")]
    ZeroR,
    #[error("integer families require 3 to not divide k, got k = {0}")]
    KDivisibleByThree(u64),
    #[error("integer families require odd r, got r = {0}")]
    EvenR(u64),
    #[error("classification requires n > r, got n = {n} with r = {r}")]
    IndexTooSmall { n: u64, r: u64 },
    #[error("family start {ell0} is not admissible for k = {k}, r = {r}")]
    InadmissibleStart { k: u64, r: u64, ell0: u64 },
}

/// The parity of the family exponent l = n - r, which selects the sign
/// in the constant-value formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// The parity class of an index difference.
    pub fn of(ell: u64) -> Self {
        if ell.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// The exact value (L_k(r)^2 - 2(-1)^r) / 3, kept as a reduced fraction
/// whose denominator is 1 or 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaValue {
    pub numerator: BigUint,
    pub denominator: BigUint,
    pub is_integer: bool,
}

impl AlphaValue {
    /// The value as an exact rational.
    pub fn as_ratio(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.numerator.clone()),
            BigInt::from(self.denominator.clone()),
        )
    }

    /// The integer value, when there is one.
    pub fn as_integer(&self) -> Option<&BigUint> {
        if self.is_integer {
            Some(&self.numerator)
        } else {
            None
        }
    }
}

impl std::fmt::Display for AlphaValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_integer {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

/// alpha for the (k, r) family.
///
/// Always defined for k >= 1, r >= 1; the result is an integer exactly
/// when r is odd and 3 does not divide k.
pub fn alpha(k: u64, r: u64) -> AlphaValue {
    assert!(k >= 1, "alpha requires k >= 1");
    assert!(r >= 1, "alpha requires r >= 1");
    let l = BigInt::from(lucas(k, r));
    let sign: BigInt = if r.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let v = &l * &l - BigInt::from(2) * sign;
    let v = v
        .to_biguint()
        .expect("L_k(r)^2 - 2(-1)^r is positive for r >= 1");
    let three = BigUint::from(3u32);
    if (&v % &three).is_zero() {
        AlphaValue {
            numerator: v / three,
            denominator: BigUint::one(),
            is_integer: true,
        }
    } else {
        AlphaValue {
            numerator: v,
            denominator: three,
            is_integer: false,
        }
    }
}

fn require_integer_family(k: u64, r: u64) -> Result<(), BranchError> {
    if k == 0 {
        return Err(BranchError::ZeroK);
    }
    if r == 0 {
        return Err(BranchError::ZeroR);
    }
    if k.is_multiple_of(3) {
        return Err(BranchError::KDivisibleByThree(k));
    }
    if r.is_multiple_of(2) {
        return Err(BranchError::EvenR(r));
    }
    Ok(())
}

/// The integer alpha of a valid (k, r) family.
fn integer_alpha(k: u64, r: u64) -> BigUint {
    let a = alpha(k, r);
    debug_assert!(
        a.is_integer,
        "odd r with 3 not dividing k gives integer alpha"
    );
    a.numerator
}

/// Two independent witnesses that alpha closes the family recurrences:
/// F_k(4r) - 3 alpha F_k(2r) and L_k(2r) - 3 alpha.  Both are zero for
/// every valid integer family.
pub fn alpha_consistency(k: u64, r: u64) -> Result<(BigInt, BigInt), BranchError> {
    require_integer_family(k, r)?;
    let a = BigInt::from(integer_alpha(k, r));
    let f4r = BigInt::from(fib(k, 4 * r));
    let f2r = BigInt::from(fib(k, 2 * r));
    let l2r = BigInt::from(lucas(k, 2 * r));
    let three = BigInt::from(3);
    Ok((f4r - &three * &a * f2r, l2r - three * a))
}

/// The shared Markoff value of the (k, r) family members whose exponent
/// l = n - r has the given parity.
///
/// Even parity gives alpha^2 + (F_k(r) L_k(r))^2, always positive.  Odd
/// parity gives alpha^2 - (F_k(r) L_k(r))^2, which is positive for
/// k >= 4, zero for k in {1, 2} with r = 1, and negative for k in
/// {1, 2} with r >= 3.
pub fn family_m(k: u64, r: u64, parity: Parity) -> Result<BigInt, BranchError> {
    require_integer_family(k, r)?;
    let a = BigInt::from(integer_alpha(k, r));
    let fl = BigInt::from(fib(k, r) * lucas(k, r));
    let sq = &fl * &fl;
    let m = match parity {
        Parity::Even => &a * &a + sq,
        Parity::Odd => &a * &a - sq,
    };
    check_sign_law(k, r, parity, &m);
    Ok(m)
}

/// The sign of the family value follows k and r alone; this pins the
/// computed value against that law.
fn check_sign_law(k: u64, r: u64, parity: Parity, m: &BigInt) {
    match parity {
        Parity::Even => assert!(m.is_positive(), "even-parity family values are positive"),
        Parity::Odd => {
            if k >= 4 {
                assert!(
                    m.is_positive(),
                    "odd-parity family values are positive for k >= 4"
                );
            } else if r == 1 {
                assert!(
                    m.is_zero(),
                    "odd-parity family values vanish for k in {{1, 2}}, r = 1"
                );
            } else {
                assert!(
                    m.is_negative(),
                    "odd-parity family values are negative for k in {{1, 2}}, r >= 3"
                );
            }
        }
    }
}

/// What classify reports about one family member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub k: u64,
    pub r: u64,
    /// The family index; the triple is (alpha, F_k(n-r), F_k(n+r)).
    pub n: u64,
    pub alpha: AlphaValue,
    pub b: BigUint,
    pub c: BigUint,
    /// Whether all three entries are integers, equivalently whether r is
    /// odd and 3 does not divide k.
    pub integer_entries: bool,
    /// Whether alpha <= b <= c as exact rationals.
    pub ordered: bool,
    /// Whether the triple is an ordered minimal one, i.e. ordered with
    /// c - 3 alpha b >= 0.  Always false when not ordered.
    pub minimal: bool,
    /// The exact Markoff value M(alpha, b, c).
    pub m: BigRational,
    pub m_positive: bool,
}

impl Classification {
    /// The triple as exact integers, when all entries are integers.  The
    /// entries come in family order (alpha, b, c), which need not be
    /// sorted; see `ordered`.
    pub fn integer_triple(&self) -> Option<Triple> {
        let a = self.alpha.as_integer()?;
        Some(Triple::new(a.clone(), self.b.clone(), self.c.clone()))
    }
}

/// Classifies the (k, r) family member at index n > r.
///
/// All k >= 1 and r >= 1 are accepted; when r is even or 3 divides k
/// the entries alpha and m are exact rationals with denominator a power
/// of 3 and `integer_entries` is false.
pub fn classify(k: u64, r: u64, n: u64) -> Result<Classification, BranchError> {
    if k == 0 {
        return Err(BranchError::ZeroK);
    }
    if r == 0 {
        return Err(BranchError::ZeroR);
    }
    if n <= r {
        return Err(BranchError::IndexTooSmall { n, r });
    }
    let a = alpha(k, r);
    let b = fib(k, n - r);
    let c = fib(k, n + r);
    let integer_entries = a.is_integer;

    let ar = a.as_ratio();
    let br = BigRational::from_integer(BigInt::from(b.clone()));
    let cr = BigRational::from_integer(BigInt::from(c.clone()));
    let ordered = ar <= br && br <= cr;
    let phi = &cr - BigRational::from_integer(BigInt::from(3)) * &ar * &br;
    let minimal = ordered && !phi.is_negative();
    let m = &ar * &ar + &br * &br + &cr * &cr
        - BigRational::from_integer(BigInt::from(3)) * &ar * &br * &cr;
    let m_positive = m.is_positive();

    if integer_entries {
        let expected = family_m(k, r, Parity::of(n - r))?;
        assert_eq!(
            m,
            BigRational::from_integer(expected),
            "family member value must match the constant-family formula"
        );
    }

    Ok(Classification {
        k,
        r,
        n,
        alpha: a,
        b,
        c,
        integer_entries,
        ordered,
        minimal,
        m,
        m_positive,
    })
}

/// A validated family label: k, r, and an index in the l numbering
/// (l and n are related by n = l + r).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchSpec {
    pub k: u64,
    pub r: u64,
    pub ell0: u64,
}

impl BranchSpec {
    /// Builds a spec from an l index, checking that (k, r) is a valid
    /// integer family and ell0 >= 1.
    pub fn from_ell(k: u64, r: u64, ell0: u64) -> Result<Self, BranchError> {
        require_integer_family(k, r)?;
        if ell0 == 0 {
            return Err(BranchError::InadmissibleStart { k, r, ell0 });
        }
        Ok(BranchSpec { k, r, ell0 })
    }

    /// Builds a spec from an n index, converting through n = l + r.
    pub fn from_n(k: u64, r: u64, n: u64) -> Result<Self, BranchError> {
        require_integer_family(k, r)?;
        if n <= r {
            return Err(BranchError::IndexTooSmall { n, r });
        }
        BranchSpec::from_ell(k, r, n - r)
    }

    /// The n index of this label.
    pub fn n(&self) -> u64 {
        self.ell0 + self.r
    }

    /// The family alpha.
    pub fn alpha(&self) -> AlphaValue {
        alpha(self.k, self.r)
    }
}

/// Whether l is an admissible branch start for the (k, r) family: for
/// k >= 3 any l > 2r, for k in {1, 2} only even l >= 2r.
fn admissible_start(k: u64, r: u64, ell0: u64) -> bool {
    if k > 2 {
        ell0 > 2 * r
    } else {
        ell0 >= 2 * r && ell0.is_multiple_of(2)
    }
}

/// The first count + 1 triples of the v2 branch starting at family
/// index ell0, namely (alpha, F_k(ell0 + 2rj), F_k(ell0 + 2r(j+1))) for
/// j = 0..=count.  Each consecutive pair is checked to be one v2 step
/// apart.
pub fn principal_branch(k: u64, r: u64, ell0: u64, count: u64) -> Result<Vec<Triple>, BranchError> {
    require_integer_family(k, r)?;
    if !admissible_start(k, r, ell0) {
        return Err(BranchError::InadmissibleStart { k, r, ell0 });
    }
    let a = integer_alpha(k, r);
    let mut out = Vec::with_capacity(count as usize + 1);
    for j in 0..=count {
        let t = Triple::new(
            a.clone(),
            fib(k, ell0 + 2 * r * j),
            fib(k, ell0 + 2 * r * (j + 1)),
        );
        if let Some(prev) = out.last() {
            let stepped = vieta2(prev).expect("branch triples are ordered, so v2 stays positive");
            assert_eq!(
                stepped, t,
                "consecutive branch triples must be one v2 step apart"
            );
        }
        out.push(t);
    }
    Ok(out)
}

/// One branch of the family distribution: its label, the minimal tree
/// root its triples descend to, and the first triple past the root
/// where the plain v2 branch shape takes over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchRoot {
    pub ell0: u64,
    pub minimal_root: OrderedTriple,
    pub branch_start: Triple,
}

/// The minimal roots reached by the (k, r) family branches, listed by
/// ascending label.
///
/// Labels run over even l in [2, 2r] for every valid k, and odd l in
/// [1, 2r - 1] additionally when k >= 4; so there are r roots for
/// k in {1, 2} and 2r roots for k >= 4.  Even labels give the root by
/// sorting (F_k(l), alpha, F_k(l + 2r)); odd labels give it by one
/// further backward Vieta step from that triple.
pub fn branch_roots(k: u64, r: u64) -> Result<Vec<BranchRoot>, BranchError> {
    require_integer_family(k, r)?;
    let a = integer_alpha(k, r);
    let mut out = Vec::new();
    for ell0 in 1..=2 * r {
        let odd = ell0 % 2 == 1;
        if odd && k < 4 {
            continue;
        }
        let near = Triple::new(fib(k, ell0), a.clone(), fib(k, ell0 + 2 * r));
        let minimal_root = if odd {
            vieta3(&near).expect("odd-label triples sit one step above their root")
        } else {
            order_triple(&near)
        };
        assert!(
            is_minimal(&minimal_root),
            "every branch must descend to a minimal root"
        );
        let branch_start = Triple::new(a.clone(), fib(k, ell0 + 2 * r), fib(k, ell0 + 4 * r));
        out.push(BranchRoot {
            ell0,
            minimal_root,
            branch_start,
        });
    }
    Ok(out)
}

/// Every non-minimal ordered family triple with all components at most
/// bound, across all valid r for this k, in (r, n) lexicographic order.
///
/// Empty when 3 divides k, since no integer families exist there.  The
/// admissible indices are n > 3r, restricted to odd n when k is 1 or 2.
pub fn theorem11_enumerate(k: u64, bound: &BigUint) -> Vec<Classification> {
    assert!(k >= 1, "enumeration requires k >= 1");
    let mut out = Vec::new();
    if k.is_multiple_of(3) {
        return out;
    }
    let mut r = 1;
    loop {
        let n0 = if k <= 2 { 3 * r + 2 } else { 3 * r + 1 };
        if fib(k, n0 + r) > *bound {
            break;
        }
        let step = if k <= 2 { 2 } else { 1 };
        let mut n = n0;
        while fib(k, n + r) <= *bound {
            let c = classify(k, r, n).expect("n > 3r >= r is always a valid index");
            debug_assert!(c.integer_entries && c.ordered && !c.minimal && c.m_positive);
            out.push(c);
            n += step;
        }
        r += 2;
    }
    out
}

/// For a family triple at index l, the label of the branch containing
/// it: the representative of l in (0, 2r].
pub fn branch_label_of_index(r: u64, ell: u64) -> u64 {
    assert!(ell >= 1);
    (ell - 1) % (2 * r) + 1
}

/// Walks a family triple down to its minimal root and checks it lands
/// on the root predicted by its branch label.  Returns the root and the
/// number of backward steps taken.
pub fn descend_and_match(
    k: u64,
    r: u64,
    ell: u64,
    max_steps: u64,
) -> Result<(OrderedTriple, u64), BranchError> {
    require_integer_family(k, r)?;
    if !admissible_start(k, r, ell) {
        return Err(BranchError::InadmissibleStart { k, r, ell0: ell });
    }
    let a = integer_alpha(k, r);
    let t = order_triple(&Triple::new(a, fib(k, ell), fib(k, ell + 2 * r)));
    let (root, steps) = descend_to_root(&t, max_steps)
        .expect("family triples have positive value and reach a root");
    let label = branch_label_of_index(r, ell);
    let roots = branch_roots(k, r)?;
    let predicted = roots
        .iter()
        .find(|br| br.ell0 == label)
        .expect("labels in (0, 2r] are all listed");
    assert_eq!(
        root, predicted.minimal_root,
        "descent must land on the root of the containing branch"
    );
    Ok((root, steps))
}
