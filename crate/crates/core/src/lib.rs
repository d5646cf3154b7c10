pub mod assembly;
pub mod bench;
pub mod convert;
pub mod eigen;
pub mod element;
pub mod error;
pub mod mesh;
pub mod meshgen;
pub mod sparse;
