//! Exact-integer polynomial and quasipolynomial machinery plus the catalog
//! of closed-form counts it carries.

mod catalog;
mod poly;
mod quasi;

pub use catalog::{
    pgl_order, FormulaCatalog, FormulaError, FormulaName, IdentityName, IdentityOutcome,
    LinearIdentity, ParityReport,
};
pub use poly::{product, IntPoly};
pub use quasi::{a_indicator, QuasiPoly};
