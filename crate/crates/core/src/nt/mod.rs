//! Primes, factorization and multiplicative functions.

pub mod arith;
pub mod factored;
pub mod factorize;
pub mod set;
pub mod sieve;

pub use arith::{arith_fn, divisors_u64, euler_phi, mobius, mobius_u64, phi_u64, squarefree_kernel, ArithFn};
pub use factored::{gcd_lcm, FactoredInt};
pub use factorize::{factorize, factorize_u64};
pub use set::{IntegerSet, SetFlags};
pub use sieve::{first_primes, is_prime_u64, prime_count, primes_iter, primes_up_to, sieve_primes};
