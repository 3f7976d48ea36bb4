//! Derived functors of limits and colimits over posets.

mod cylinder;
mod oracle;
mod replacement;

pub use cylinder::{cochain_point, cocylinder, cylinder, ChainMap, CochainMap, Cocylinder, Cylinder};
pub use oracle::{nerve_cohomology_oracle, nerve_homology_oracle};
pub use replacement::{
    cofibrant_replacement, cohomology, fibrant_replacement, homology, CofibrantReplacement, ColimitComplex,
    ComplexValuedFunctor, FibrantReplacement, GradedComplex, LimitComplex,
};

#[cfg(test)]
mod tests;
