//! Partition functions: the naive state sum, string diagrams and the spin handle algebra.

mod diagram;
mod network;
mod spin;

pub use diagram::{eval_diagram, Diagram, Gen, Placed};
pub use network::naive_partition;
pub use spin::{
    chi, eta, fhk_partition, fhk_z, ring_maps, sphere_partition, spin_partition, spin_partition_direct, RingMaps,
    SpinModel,
};
