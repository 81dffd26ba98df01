pub mod cli;
pub mod error;
pub mod fpoly;
pub mod geometry;
pub mod ntt;
pub mod oracle;
pub mod mumford_newton;
pub mod padic;
pub mod rational_repr;
pub mod series;
pub mod series_poly;

pub use error::{Error, Result};
pub use padic::{Ctx, FixedPointElem, PrecisionContext};
pub use series::TruncatedSeries;
pub use series_poly::{QuotientRing, SeriesPoly};
