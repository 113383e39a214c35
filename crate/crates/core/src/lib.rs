//! Exact geometry and search kernel for walls, thickness numbers and Heesch
//! coronas of shapes that do not tile the plane.
//!
//! Every coordinate lives in the field Q(√3); nothing in this crate rounds.

#![no_std]

extern crate alloc;

pub mod exact;
pub mod geom;
pub mod shape;
pub mod contact;
pub mod layout;
pub mod wall;
pub mod corona;
