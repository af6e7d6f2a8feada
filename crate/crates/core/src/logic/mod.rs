//! First-order syntax over relational signatures, Gödel numbering,
//! translations, theories and the `⊕` combinator.

pub mod codes;
pub mod enumerate;
mod parse;
mod print;
pub mod prover;
pub mod sets;
pub mod syntax;
pub mod theory;
pub mod translate;

pub use codes::{godel, ungodel};
pub use parse::{parse_formula, parse_sentence};
pub use sets::{refutation_index, theory_from_sets};
pub use syntax::{eq, prop, rel, Formula, Sentence, Signature};
pub use theory::{oplus, AtomSet, Axioms, JSpec, PMode, Theory, Verdict, P};
pub use translate::{apply_translation, enumerate_translations, Translation, TranslationEnumerator};
