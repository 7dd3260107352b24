//! Inputs shared by the benchmarks.

use cubic_lines::builders::{example, ExampleName};
use cubic_lines::jacobian::syzygy_matrix;
use cubic_lines::linalg::ExactMatrix;
use cubic_lines::HomogeneousPoly;

/// Exact defining polynomial of a built-in example.
pub fn product(name: ExampleName) -> HomogeneousPoly {
    example(name).exact_product().expect("built-in examples carry an exact product")
}

/// The syzygy matrix whose rank fixes the stable Hilbert function value of
/// an example, at the first degree where the Tjurina evaluation starts.
pub fn tjurina_matrix(name: ExampleName) -> ExactMatrix {
    let f = product(name);
    let m = f.degree();
    syzygy_matrix(&f, 3 * (m - 2) + 1 - m).expect("degree at least 3")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(product(ExampleName::Cppp).degree(), 12);
        let a = tjurina_matrix(ExampleName::El6);
        assert_eq!(a.rank(), a.rank_with(cubic_lines::linalg::RankMethod::Modular));
    }
}
