//! Numerics for spaces of `C^k` functions whose top-order derivatives have a
//! prescribed modulus of continuity `ω`.
//!
//! The crate is `no_std` (it needs `alloc`) and contains no IO. It provides:
//!
//! * [`modulus`]: moduli of continuity and grid-based axiom checks;
//! * [`whitney`]: jets, Whitney fields, the pairwise Whitney–Glaeser quantity
//!   `λ`, sampled `C^{k,ω}` norms and jet composition (Faà di Bruno);
//! * [`extension`]: McShane extension (`k = 0`, any dimension) and a 1D
//!   Hermite-blend extension for any `k`, with depth audits;
//! * [`jackson`]: the Jackson kernel, cutoff/periodization, the tensor
//!   smoothing operator `E_N`, the finite-rank operators `L_{N,ℓ}`, error
//!   reports and a weak* convergence checker;
//! * [`predual`]: atomic functionals, their pairing with fields, norms of the
//!   geometric predual via LP duality, and the finiteness-gap certifier;
//! * [`markov`]: weak `k`-Markov ratios via discretized extremal LPs;
//! * [`optim`]: the dense two-phase simplex solver behind all of the above.
//!
//! Every number that is a sampled supremum is reported as a lower bound
//! together with the sample it was taken over.
#![no_std]

#[cfg_attr(not(test), macro_use)]
extern crate alloc;

#[cfg(test)]
#[macro_use]
extern crate std;

pub mod cutoff;
pub mod error;
pub mod extension;
pub mod jackson;
pub mod markov;
mod math;
pub mod modulus;
pub mod multi_index;
pub mod optim;
pub mod predual;
pub mod quadrature;
pub mod taylor;
pub mod whitney;

pub use error::{Error, Result};
pub use modulus::Modulus;
pub use multi_index::{MultiIndex, MultiIndexSet};
pub use whitney::{Jet, NormContext, Smooth, WhitneyField};
