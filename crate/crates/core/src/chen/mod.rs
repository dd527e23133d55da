//! Chen iterated integrals of `d log` forms along piecewise polynomial paths.

pub mod iterated;
pub mod path;
pub mod quadrature;

pub use iterated::{
    homotopy_test, integrate_words, iterate_element, iterate_word, iterate_word_from, monodromy_probe, shuffle_test,
    shuffle_test3, HomotopyReport, IterIntResult, OneForm, QuadOptions,
};
pub use path::PathSpec;
