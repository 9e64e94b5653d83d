//! Core library for text-grounded grid-world reinforcement learning.
//!
//! Everything in this crate is pure computation over `alloc`: the game
//! engine, the description corpus, the factorized state representation,
//! the value-iteration/reactive action-value network, the TD learner and
//! the evaluation metrics. File formats, checkpoint IO and the command
//! line live in the companion `textvin-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod corpus;
pub mod engine;
pub mod eval;
pub mod learner;
pub mod qnet;
pub mod repgen;
pub mod rng;
pub mod tape;
