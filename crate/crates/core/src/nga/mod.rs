//! Nilsson-Gevrey arithmetic expressions: exact monodromy, splitting into
//! components, and guessing annihilating operators.

pub mod cyclotomic;
pub mod expr;
pub mod growth;
pub mod guess;
pub mod split;

pub use cyclotomic::{cyclotomic, CycConst};
pub use expr::{fold_exponent, monodromy_apply, monodromy_inverse, NgaExpr, NgaFunction, NgaTerm};
pub use growth::{g_growth_diagnostic, GrowthReport};
pub use guess::{guess_ode, GuessResult, DEFAULT_MARGIN};
pub use split::{holonomy_split, reassemble, SplitComponent};
