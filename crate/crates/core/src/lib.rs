//! Exact analysis of linear differential operators over Q(z).

pub mod algebra;
pub mod diffop;
pub mod error;
pub mod galochkin;
pub mod kovacic;
pub mod local;
pub mod nga;
pub mod order1;
pub mod sample;
pub mod series;

pub use algebra::factor::{poly_factor, squarefree, Factorization};
pub use algebra::linalg::{nullspace, rref, solve_affine};
pub use algebra::partial::{partial_fractions, PartialFractions, Place};
pub use algebra::poly::Poly;
pub use algebra::rat::{fmt_rat, int, parse_rat, pochhammer, pochhammer_denominator, rat, Rat};
pub use algebra::ratfunc::RatFunc;
pub use algebra::roots::{rational_roots, RootSet};

pub use diffop::{companion, gcrd, op_mul, op_rdiv, CompanionSystem, DiffOp};
pub use error::{Error, Result};
pub use galochkin::{
    closed_form_a, denominator_sequence, divisibility_chain, iterate_a, scalar_system,
    GalochkinReport,
};
pub use kovacic::{
    case1_search, case2_search, case3_detect, case_conditions, classify_theorem2, normal_form,
    Case, Certificate, NormalForm, Outcome, Theorem2Verdict,
};
pub use local::{
    fuchs_relation_check, indicial_at, is_fuchsian, residue_exponent_identity, singular_places,
    FuchsReport, IndicialData,
};
pub use nga::{
    g_growth_diagnostic, guess_ode, holonomy_split, monodromy_apply, reassemble, CycConst,
    GuessResult, NgaExpr, NgaTerm, SplitComponent,
};
pub use order1::{
    classify_order1, classify_order1_op, pp_log_derivative, rational_solution, solve_inhomogeneous,
    InhomResult, Order1Verdict, PowerProduct,
};
pub use series::{op_apply, TruncSeries};
