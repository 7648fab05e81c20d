#![no_std]
extern crate alloc;

pub mod metalang;
pub mod cat;
pub mod ifca;
pub mod institution;
pub mod integrate;
pub mod metastack;
pub mod registry;
pub mod sexpr;
pub mod termlang;
