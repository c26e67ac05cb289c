//! Newton–Okounkov polytopes of the flag varieties `Flag(ℂ³)` and `Flag(ℂ⁴)`.

pub mod classes;
pub mod golden;
pub mod pipeline;
pub mod string;
pub mod verify;
pub mod words;
