pub mod algebra;
pub mod characters;
pub mod cli;
pub mod ensemble;
pub mod error;
pub mod fluctuations;
pub mod moments;
pub mod montecarlo;
pub mod mops;
pub mod partitions;
pub mod symfun;
pub mod verify;
pub mod wick;
