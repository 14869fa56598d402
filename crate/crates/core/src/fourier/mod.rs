//! Fourier transforms of polytope indicators and facet measures, the
//! quadrature oracles, and the divergence-theorem split.

mod divdiff;
mod divergence;
mod frame;
mod quadrature;
mod scan;
mod transform;

pub use divdiff::{
    exp_divided_difference, exp_divided_difference_series, exp_divided_difference_with,
    CLUSTER_DIAMETER,
};
pub use divergence::{
    cone_constant, cone_region, divergence_facet_sum, divergence_residual,
    divergence_volume_term, sigma_bound, ConeConstant, ConeScan, DivergenceResidual,
    DivergenceSplit,
};
pub(crate) use divergence::cone_constant_in_frame;
pub use frame::{AxisFrame, ConeRegion};
pub use quadrature::{ft_indicator_quadrature, ft_indicator_slices};
pub use scan::{format_g17, ScanGrid, ScanRow};
pub use transform::{ft_facet_measure, ft_indicator, ft_simplex};
