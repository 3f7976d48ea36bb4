//! Higher limits and colimits of functors from finite posets to vector spaces.
//!
//! The engine builds explicit fibrant and cofibrant replacements and reads the groups off
//! their limits and colimits; a nerve-complex oracle recomputes them independently. On top
//! of it sit recursive coatom orderings, the stability conditions that predict vanishing,
//! weak Mackey functors, atomic functors and hyperplane arrangements.
//!
//! ```
//! use std::sync::Arc;
//! use posetcoh::derived::cohomology;
//! use posetcoh::fixtures::boolean_lattice;
//! use posetcoh::{Field, FunctorOnPoset, Variance};
//!
//! let b3 = boolean_lattice(3);
//! let f = FunctorOnPoset::constant(Arc::new(b3.poset().clone()), Variance::Contravariant, Field::Rational, 1);
//! assert_eq!(cohomology(&f, &b3.proper_part())?.to_string(), "{0: 1, 1: 1}");
//! # Ok::<(), posetcoh::Error>(())
//! ```

pub mod arrangement;
pub mod derived;
pub mod error;
pub mod fixtures;
pub mod functor;
pub mod io;
pub mod linalg;
pub mod mackey;
pub mod mobius;
pub mod order_complex;
pub mod poset;
pub mod random;
pub mod shellability;
pub mod stability;

pub use error::{Error, Result};
pub use functor::{FunctorOnPoset, Variance};
pub use linalg::{Field, GradedDims, Matrix, Scalar};
pub use poset::{BoundedPoset, Chain, Poset};

#[cfg(doctest)]
mod book {
    macro_rules! chapters {
        ($($name:ident => $file:literal),* $(,)?) => {
            $(
                #[doc = include_str!(concat!("../../../book/src/", $file))]
                pub struct $name;
            )*
        };
    }

    chapters! {
        Introduction => "introduction.md",
        Posets => "posets.md",
        LinearAlgebra => "linear-algebra.md",
        Functors => "functors.md",
        Derived => "derived.md",
        Shellability => "shellability.md",
        Stability => "stability.md",
        Mackey => "mackey.md",
        Mobius => "mobius.md",
        Arrangements => "arrangements.md",
        Cli => "cli.md",
    }

    #[doc = include_str!("../../../README.md")]
    pub struct Readme;
}
