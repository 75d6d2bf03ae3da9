//! Expected typing times for random and educated monkeys.
//!
//! A uniformly random monkey needs about `m^ℓ` keystrokes to produce a given
//! text of `ℓ` characters; an educated monkey that only types statistically
//! typical text at entropy rate `h` needs about `2^(ℓh)`. This crate computes
//! both in log space, checks them against exact border-sum hitting times and
//! Monte Carlo simulation, and estimates `h` from corpora.
//!
//! ```
//! use finite_monkey::{normalize, Alphabet, Mode, MonkeyModel, TypingSpeed};
//! use finite_monkey::waiting::estimate;
//!
//! let text = normalize("To be or not to be", &Alphabet::canonical());
//! let educated = MonkeyModel::educated(0.863).unwrap();
//! let e = estimate(&text, &educated, &TypingSpeed::default(), Mode::RoundedRule).unwrap();
//! assert_eq!(e.display, "3 hours and 4 minutes");
//! ```

pub mod cli;
pub mod entropy;
pub mod logdomain;
pub mod registry;
pub mod simulate;
pub mod textnorm;
pub mod waiting;

pub use logdomain::LogQuantity;
pub use textnorm::{normalize, Alphabet, NormalizedText};
pub use waiting::{MonkeyModel, Mode, TypingSpeed, WaitingEstimate};
