//! The decidable predicates `prf`, `prf'` and `q`, as meta-level checks.

use crate::codec::{decode_formula, decode_script, encode, GodelNumber};
use crate::kernel::{check_proof, ProofScript, SystemProfile};
use crate::syntax::{numeral, Formula};

/// The script is a hypothesis-free proof under `p`; its conclusion.
fn proves<'s>(script: &'s ProofScript, p: &SystemProfile) -> Option<&'s Formula> {
    if check_proof(script, p).is_proof() {
        script.conclusion()
    } else {
        None
    }
}

/// `x` is the number of a proof under `p` whose last formula has number `y`.
pub fn prf_check(x: &GodelNumber, y: &GodelNumber, p: &SystemProfile) -> bool {
    if x.codec != y.codec {
        return false;
    }
    let Ok(script) = decode_script(x) else { return false };
    proves(&script, p).is_some_and(|f| encode(f, x.codec).value == y.value)
}

/// `u` is the number of a formula `F` with `x1` free, and `y` is the number
/// of a proof under `p` of `F[x1 := u]`, `u` as a numeral.
pub fn prf_prime_check(u: &GodelNumber, y: &GodelNumber, p: &SystemProfile) -> bool {
    if u.codec != y.codec {
        return false;
    }
    let Ok(f) = decode_formula(u) else { return false };
    if !f.has_free(1) {
        return false;
    }
    let Ok(instance) = f.substitute(1, &numeral(u.value.clone())) else { return false };
    proves_formula(y, &instance, p)
}

/// `x` is the number of a formula `K(z)` with exactly one free variable, and
/// `y` is the number of a proof under `p` of `K(x)`, `x` as a numeral.
pub fn q_check(x: &GodelNumber, y: &GodelNumber, p: &SystemProfile) -> bool {
    if x.codec != y.codec {
        return false;
    }
    let Ok(k) = decode_formula(x) else { return false };
    let free = k.free_vars();
    let [z] = free.into_iter().collect::<Vec<_>>()[..] else { return false };
    let Ok(instance) = k.substitute(z, &numeral(x.value.clone())) else { return false };
    proves_formula(y, &instance, p)
}

fn proves_formula(y: &GodelNumber, target: &Formula, p: &SystemProfile) -> bool {
    let Ok(script) = decode_script(y) else { return false };
    proves(&script, p) == Some(target)
}
