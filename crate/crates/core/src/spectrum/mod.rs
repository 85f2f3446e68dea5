//! Finite samples of the set of measures `{ m(F_A) }`, its smallest
//! positive and largest elements, and the linear forms whose measure sets
//! exhaust all such sets.

mod forms;
mod sample;

pub use forms::{embed_in_linear_form, linear_form_f_n, mb_generators, Embedding, SignedPartition, MAX_GENERATORS};
pub use sample::{
    lehmer_element, max_element, sample_measure_set, sample_measure_set_ranks, SampleFailure, SpectrumEntry,
    SpectrumSample,
};
