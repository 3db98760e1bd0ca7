//! The matrix group `⟨Θ, A, B⟩`, its action `ρ` on `H₁(Y)`, membership in `Γ`, witness
//! search and the continued-fraction families.

mod cf;
mod matrix;
mod witness;
mod word;

pub use cf::{
    convergents, density_direction, density_word, fourey_direction, fourey_word, hurwitz_check,
    recurrence_classify, ContinuedFraction, Recurrence,
};
pub use matrix::Mat2;
pub use witness::{find_witness, witness_cap, WitnessReport, WordSearch};
pub use word::{Gen, GroupWord};

/// The relators of the presentation `⟨Θ, A, B | Θ⁴, Θ²BΘ²B⁻¹, Θ²AΘ⁻²A⁻¹⟩`.
pub fn presentation_relators() -> Vec<GroupWord> {
    ["T^4", "T^2 B T^2 B^-1", "T^2 A T^-2 A^-1"]
        .iter()
        .map(|s| s.parse().expect("well-formed relator"))
        .collect()
}
