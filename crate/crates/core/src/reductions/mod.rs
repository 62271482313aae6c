//! Reductions from descriptor sets to sets of expansions: the Taylor-based
//! map `f`, the zero-density map `g`, the digit actions `g'` and `f'` and
//! their composite `phi`.

pub mod descriptor;
pub mod maps;
pub mod taylor;

pub use descriptor::{Classification, NatSeqDescriptor, Parity, Sequence, Subsequence, TailRule};
pub use maps::{
    action_f_prime, action_g_prime, f_prime_change_bound, phi, phi_agreement_prefix, reduction_f,
    triangular, zero_density_g, ZeroDensitySet,
};
pub use taylor::{big_t, log2_derivative, log2_taylor, TaylorApprox};

/// The `n`-th term of `d`.
pub fn seq_term(d: &NatSeqDescriptor, n: u64) -> u64 {
    d.term(n)
}
