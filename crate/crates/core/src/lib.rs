//! Finite triangulated categories of type A: stable module categories and
//! mesh-category orbit quotients, rigid objects and their mutation,
//! subfactor categories and localisations of module categories.

pub mod algebra;
pub mod error;
pub mod linalg;

pub use error::{Error, Result};
pub mod tricat;
pub mod cover;
pub mod stable;
pub mod presets;
pub mod rigid;
pub mod adjoint;
pub mod subcat;
pub mod modcat;
