pub mod engine;
pub mod error;
pub mod exact_advice;
pub mod fixtures;
pub mod graph;
pub mod guessing;
pub mod iso;
pub mod optimum;
pub mod property;
pub mod ramsey;
pub mod reductions;
