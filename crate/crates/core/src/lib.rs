//! Classification, prenexation and translation of first-order arithmetic
//! formulas, with a brute-force finite-model oracle as ground truth.
//!
//! The engine never claims more than it can check: every rewrite emits an
//! [`EquivalenceChain`] whose steps can be replayed by [`oracle::replay_chain`],
//! and every semi-classical principle it relies on is recorded in a
//! [`Certificate`].

pub mod classify;
pub mod error;
pub mod formula;
pub mod oracle;
pub mod prenex;
pub mod random;
pub mod translations;

pub use classify::{
    alt_paths, class_membership, degree, is_or_free, prenex_shape, AltPath, ClassLabel, Polarity,
    ShapeKind,
};
pub use error::{Error, Result};
pub use formula::{
    alpha_eq, free_vars, fresh_var, parse_formula, parse_term, substitute, well_formed, Formula,
    FuncInterp, PredInterp, Signature, Term, VarSet,
};
pub use oracle::{check_equiv, check_valid, eval, replay_chain, CheckReport, OracleConfig};
pub use prenex::{
    budget_leq, pnft_budget, BudgetRow, Certificate, ClassArg, Deriv, EquivalenceChain, Mode,
    PrincipleTag, Relation, Schema, Step, ValidityScope,
};
pub use prenex::{neg_e_nn_pi, nn_u_prenex, prenex_df, prenex_e, prenex_u, Transformed};
pub use translations::{a_translate, conservation_chain, kuroda, kuroda_inner, substitute_star};
