//! Gödel's Beta function and finite-sequence witnesses.
//!
//! `beta(u, v, i) = rm(1 + (i+1)·v, u)`. For every finite sequence `a` there
//! are `u, v` with `beta(u, v, i) = a[i]` for all `i < len(a)`; the classical
//! existence argument takes `v` a multiple of `len(a)!` and `max(a)`, which
//! makes the moduli pairwise coprime. [`encode_sequence`] instead returns the
//! least witness in `(v, u)` order.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::syntax::{parse_formula, Formula};

/// Remainder of `y` divided by `x`; `rm(0, y) = y`.
pub fn rm(x: &BigUint, y: &BigUint) -> BigUint {
    if x.is_zero() {
        y.clone()
    } else {
        y % x
    }
}

/// The `i`-th Beta modulus `1 + (i+1)·v`.
pub fn modulus(v: &BigUint, i: usize) -> BigUint {
    BigUint::one() + BigUint::from(i + 1) * v
}

pub fn beta(u: &BigUint, v: &BigUint, i: &BigUint) -> BigUint {
    rm(&(BigUint::one() + (i + 1u32) * v), u)
}

/// `beta` over machine integers, for the common small case.
pub fn beta_u64(u: u64, v: u64, i: u64) -> BigUint {
    beta(&u.into(), &v.into(), &i.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BetaWitness {
    pub u: BigUint,
    pub v: BigUint,
    pub sequence: Vec<BigUint>,
}

impl BetaWitness {
    /// `beta(u, v, i) = sequence[i]` for every `i < len`.
    pub fn verify(&self) -> bool {
        self.sequence
            .iter()
            .enumerate()
            .all(|(i, a)| beta(&self.u, &self.v, &BigUint::from(i)) == *a)
    }
}

/// The least witness `(u, v)` in lexicographic `(v, u)` order.
///
/// For each `v = 0, 1, …` the congruences `u ≡ a[i] (mod 1+(i+1)v)` are
/// solved exactly by the generalised Chinese Remainder Theorem, which yields
/// the least `u` for that `v` or proves there is none.
pub fn encode_sequence<T: Clone + Into<BigUint>>(a: &[T]) -> BetaWitness {
    let sequence: Vec<BigUint> = a.iter().cloned().map(Into::into).collect();
    let mut v = BigUint::zero();
    loop {
        if let Some(u) = solve_for(&sequence, &v) {
            return BetaWitness { u, v, sequence };
        }
        v += 1u32;
    }
}

/// Least `u` with `u mod m_i = a_i` for all `i`, if any.
fn solve_for(a: &[BigUint], v: &BigUint) -> Option<BigUint> {
    let mut r = BigUint::zero();
    let mut m = BigUint::one();
    for (i, ai) in a.iter().enumerate() {
        let mi = modulus(v, i);
        if *ai >= mi {
            return None;
        }
        (r, m) = crt_step(&r, &m, ai, &mi)?;
    }
    Some(r)
}

/// Combine `x ≡ r1 (mod m1)` and `x ≡ r2 (mod m2)` into `x ≡ r (mod lcm)`,
/// with `0 ≤ r < lcm`.
fn crt_step(r1: &BigUint, m1: &BigUint, r2: &BigUint, m2: &BigUint) -> Option<(BigUint, BigUint)> {
    let g = m1.gcd(m2);
    let (r1m, r2m) = (r1 % &g, r2 % &g);
    if r1m != r2m {
        return None;
    }
    let lcm = m1 / &g * m2;
    // x = r1 + m1·k with m1·k ≡ r2 - r1 (mod m2), i.e. (m1/g)·k ≡ (r2-r1)/g (mod m2/g).
    let m2g = m2 / &g;
    let diff = (r2 + (m2 - r1 % m2)) % m2;
    let k = if m2g.is_one() {
        BigUint::zero()
    } else {
        let inv = mod_inverse(&((m1 / &g) % &m2g), &m2g)?;
        (diff / &g % &m2g) * inv % &m2g
    };
    Some(((r1 + m1 * k) % &lcm, lcm))
}

fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    use num_bigint::BigInt;
    let e = BigInt::from(a.clone()).extended_gcd(&BigInt::from(m.clone()));
    if !e.gcd.is_one() {
        return None;
    }
    let m = BigInt::from(m.clone());
    e.x.mod_floor(&m).to_biguint()
}

const BT_TEXT: &str = "(E x5)((x1 = (((0' + ((x3 + 0') * x2)) * x5) + x4)) & (x4 < (0' + ((x3 + 0') * x2))))";

/// `Bt(x1, x2, x3, x4)`: the remainder of `x1` by `1 + (x3+1)·x2` is `x4`.
///
/// The quotient is `x5`; the `<` abbreviation introduces `x6`.
pub fn build_bt_formula() -> Formula {
    static BT: OnceLock<Formula> = OnceLock::new();
    BT.get_or_init(|| parse_formula(BT_TEXT).expect("Bt text parses")).clone()
}

/// Witness hints for evaluating `Bt(u, v, i, k)`: the quotient `x5` and the
/// slack `x6` of the `<` comparison, when `k` is the true remainder.
pub fn bt_hints(u: &BigUint, v: &BigUint, i: &BigUint) -> (BigUint, BigUint) {
    let m = BigUint::one() + (i + 1u32) * v;
    let (q, r) = u.div_rem(&m);
    // r + (slack + 1) = m
    (q, m - r - 1u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn rm_examples() {
        assert_eq!(rm(&n(3), &n(7)), n(1));
        assert_eq!(rm(&n(1), &n(9)), n(0));
        assert_eq!(rm(&n(0), &n(5)), n(5));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta_u64(8, 2, 0), n(2));
        assert_eq!(beta_u64(8, 2, 1), n(3));
        assert_eq!(beta_u64(12345, 0, 7), n(0));
    }

    #[test]
    fn encode_examples() {
        let w = encode_sequence(&[2u32, 3]);
        assert_eq!((w.u.clone(), w.v.clone()), (n(8), n(2)));
        assert!(w.verify());
        let e = encode_sequence::<u32>(&[]);
        assert_eq!((e.u, e.v), (n(0), n(0)));
        let f = encode_sequence(&[5u32]);
        assert_eq!((f.u, f.v), (n(5), n(5)));
    }

    #[test]
    fn crt_matches_brute_force_per_v() {
        let a = [n(1), n(0), n(4)];
        for v in 0..12u32 {
            let v = n(v.into());
            let lcm = (0..3).map(|i| modulus(&v, i)).fold(n(1), |l, m| l.lcm(&m));
            let brute = (0..lcm.to_string().parse::<u64>().unwrap())
                .map(n)
                .find(|u| (0..3).all(|i| beta(u, &v, &n(i as u64)) == a[i]));
            assert_eq!(solve_for(&a, &v), brute, "v = {v}");
        }
    }

    #[test]
    fn bt_free_vars() {
        let bt = build_bt_formula();
        assert_eq!(bt.free_vars().into_iter().collect::<Vec<_>>(), vec![1, 2, 3, 4]);
    }
}
