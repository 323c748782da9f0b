pub mod density;
pub mod divergence;
pub mod error;
pub mod games;
pub mod hyperspaces;
pub mod seqmap;
pub mod spaces;
