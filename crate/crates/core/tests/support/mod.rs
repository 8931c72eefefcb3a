#![allow(dead_code)]

pub mod subgroups;
