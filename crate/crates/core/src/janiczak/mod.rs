//! Janiczak's theory J of an equivalence relation with at most one class of
//! each finite size and arbitrarily many large classes: the sentences `A_n`,
//! a decision procedure and normal forms as boolean combinations of the `A_n`.

mod axioms;
mod boolcomb;
mod decide;
mod eval;
mod profile;

pub use axioms::{atom_code, axiom_a, axiom_a_over, j1, j1_over, j2, j2_over, j3, j3_over, recognize_atom, E};
pub use boolcomb::{BoolComb, MAX_ATOMS};
pub use decide::{consistent, decide, decide_comb, normal_form, normal_form_over, Decision, Literals, DEFAULT_BUDGET};
pub use eval::{eval, eval_over, required_bound, AbstractModel, ClassTag, Element};
pub use profile::{profiles, SizeProfile, MAX_PROFILE_ATOMS};

use crate::error::{Error, Result};
use crate::logic::{AtomSet, Theory};
use crate::recfun::{Asm, Decidable, Index, PrimOp};
use crate::textcode;

/// A J,X-theory: J plus boolean combinations of `A_s` with `s ∈ X`.
pub fn jx_theory(x: &Decidable, extra: Vec<BoolComb>) -> Result<Theory> {
    for b in &extra {
        if let Some(s) = b.atoms.iter().find(|&&s| !x.contains(&s.into())) {
            return Err(Error::Input(format!("atom A{s} is outside X")));
        }
    }
    Ok(Theory::janiczak("J,X", E, AtomSet::empty(), AtomSet::empty(), extra))
}

/// Index of `n ↦ ⌜A_n⌝` over the relation `rel`.
pub fn atom_map(rel: &str) -> Index {
    let mut asm = Asm::new(1);
    let r = asm.constant(textcode::encode_str(rel));
    let out = asm.reg();
    asm.prim(out, PrimOp::AtomA, &[r, 0]);
    asm.halt(out);
    Index::of(&asm.finish())
}
