//! Commutants, centers, isotypical blocks and the symmetrized algebras.

mod bilinear;
mod commutant;
mod decompose;
mod lambda;
mod matrix;
mod natural;

pub use bilinear::{block_bilinear_type, classify_forms, BilinearReport};
pub use commutant::{center_of_algebra, center_of_commutant, commutant, Commutant, Route};
pub use decompose::{
    basis_state_support, isotypical_decomposition, numerical_rank, odd_n_pairing, one_dim_eigenvectors, BilinearType,
    Block, BlockHalf, Decomposition, OneDimVector, PairingReport, EIG_TOL,
};
pub use lambda::{delta_of_reduced, lambda_transform, reduce_string, reduce_to_blocks};
pub use matrix::RealSparse;
pub use natural::{
    hierarchy_check, natural_basis, natural_symmetries, permute_bits, tau_aut, tau_nat, tau_z2, u_nat_basis,
    HierarchyReport,
};
