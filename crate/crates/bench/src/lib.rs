//! Fixtures shared by the benchmarks.

use aml_core::{MonoidDescriptor, Quadruple};

/// A spread of catalog entries on A^3, from small to large exponents.
pub fn descriptors() -> Vec<MonoidDescriptor> {
    vec![
        MonoidDescriptor::ThreeM,
        MonoidDescriptor::U3,
        MonoidDescriptor::Maa(Quadruple::new(1, 2, 1, 3)),
        MonoidDescriptor::MaaQ(Quadruple::new(1, 2, 1, 3)),
        MonoidDescriptor::MaaQ(Quadruple::new(2, 4, 3, 5)),
        MonoidDescriptor::Mma(Quadruple::new(4, 3, 2, 1)),
    ]
}
