//! Generalized Clifford algebras of forms and their matrix representations.
//!
//! For a form f of degree d in n variables, C_f is the free associative
//! algebra on y₁, …, yₙ modulo (Σ αᵢyᵢ)^d = f(α) for all scalars α. A
//! representation is a tuple of m×m matrices with (Σ xᵢAᵢ)^d = f·I.
//!
//! Everything here runs over Q(ζ_N) rather than an algebraically closed
//! field. The questions asked are answered by ranks: the dimension of the
//! algebra spanned by words in the Aᵢ, and the dimension of the space of
//! solutions θ of Aᵢθ = θBᵢ. Rank is unchanged by extending scalars, so
//! both numbers, and the verdicts built from them, are the same over any
//! field containing Q(ζ_N). Existence of an invertible intertwiner is
//! likewise decided by whether a determinant polynomial with coefficients
//! in Q(ζ_N) is zero. Splitting is the one place where the smaller field
//! matters: an invariant subspace defined only over an extension cannot be
//! found, which is why [`split`] can end in a reducible-but-unsplit result.

mod algebra;
mod construct;
mod equivalence;
mod form;
mod nondegenerate;
mod relations;
mod representation;
mod split;
mod verify;

pub use algebra::{algebra_span, irreducible, spin, AlgebraSpan, IrreducibilityReport};
pub use construct::{change_of_variables, clock, clock_shift, shift, tensor_diagonal, transform_rep};
pub use equivalence::{equivalent, intertwiners, EquivalenceMethod, EquivalenceReport, IntertwinerSpace};
pub use form::Form;
pub use nondegenerate::{ideal_fills_degree, nondegenerate, sylvester_resultant};
pub use relations::{generate_relations, verify_via_relations, CliffordPresentation, Relation, RelationJson};
pub use representation::{Provenance, Representation, RepresentationJson};
pub use split::{direct_sum, split, SplitOutcome, SplitPart, SplitReport};
pub use verify::{determinant_identity, verify, DeterminantIdentity, EntryFailure, VerificationReport};
