pub mod braid;
pub mod flow;
pub mod invariants;
pub mod jones;
pub mod modular;
pub mod poly;
pub mod tlink;
pub mod words;
