//! Built-in series data: the type-A line and the Ree group ²G₂.

use crate::brauer_tree::{build_hlm_tree, build_hlm_tree_with, Branch, PlanarBrauerTree, SeriesDatum};
use crate::ell_arith::validate_ell;
use crate::error::{Error, Result};
use crate::root_data::{coxeter_datum, Family, TwistedType};

/// Vertex labels of the ²G₂ tree: the Steinberg and trivial characters on the
/// non-cuspidal branch, then the four cuspidal characters.
pub const G2_LABELS: [(usize, &str); 6] =
    [(0, "St"), (1, "1"), (2, "2G2[i]"), (3, "2G2[xi]"), (4, "2G2[xibar]"), (5, "2G2[-i]")];

/// The twelfth root of unity `ξ` is the one congruent to `q⁵`.
pub const G2_XI: &str = "xi = q^5 mod l";

pub const G2_QSQ: u64 = 27;
pub const G2_ELL: u64 = 19;

/// Eigenvalue indices `ζ` are twelfths; the cuspidal branches carry
/// `i = 3`, `ξ = 1`, `ξ̄ = 11` and `−i = 9`.
pub fn g2_series() -> SeriesDatum {
    let b = |zeta, m, big_m| Branch { zeta, m, big_m };
    SeriesDatum { h0: 6, branches: vec![b(0, 0, 1), b(3, 2, 2), b(1, 3, 3), b(11, 4, 4), b(9, 5, 5)] }
}

pub fn g2_tree(qsq: u64, ell: u64) -> Result<PlanarBrauerTree> {
    let ty = TwistedType::new(Family::TwoG2, 2)?;
    let ctx = validate_ell(&coxeter_datum(ty)?, qsq, ell)?;
    Ok(build_hlm_tree(&ctx, &g2_series())?.with_labels(&G2_LABELS))
}

/// A single branch of `h0` edges; vertex `j` is the hook character
/// `(h0 − j, 1^j)`.
pub fn line_tree(h0: u64, r: u64, mu: u64) -> Result<PlanarBrauerTree> {
    let tree = build_hlm_tree_with(&SeriesDatum::line(h0), r, mu)?;
    let labels: Vec<String> = (0..h0).map(|j| hook_label(h0, j)).collect();
    let pairs: Vec<(usize, &str)> = labels.iter().enumerate().map(|(j, s)| (j, s.as_str())).collect();
    Ok(tree.with_labels(&pairs))
}

fn hook_label(n: u64, j: u64) -> String {
    match j {
        0 => format!("({n})"),
        _ if j + 1 == n => format!("(1^{n})"),
        _ => format!("({},1^{j})", n - j),
    }
}

/// `2g2` or `lineN`.
pub fn fixture_series(name: &str) -> Result<SeriesDatum> {
    let lower = name.to_ascii_lowercase();
    if lower == "2g2" {
        return Ok(g2_series());
    }
    if let Some(n) = lower.strip_prefix("line") {
        let h0: u64 = n.parse().map_err(|_| Error::invalid(format!("bad line length in {name:?}")))?;
        if h0 == 0 {
            return Err(Error::invalid("a line needs at least one edge"));
        }
        return Ok(SeriesDatum::line(h0));
    }
    Err(Error::invalid(format!("unknown fixture {name:?}; expected 2g2 or lineN")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer_tree::height;
    use crate::homotopy::check_tilting;
    use crate::tree_algebra::TreeAlgebra;

    #[test]
    fn g2_shape() {
        let t = g2_tree(G2_QSQ, G2_ELL).unwrap();
        assert_eq!((t.n_edges(), t.r, t.multiplicity), (6, 1, 3));
        assert_eq!(t.exc_order, vec![0, 2, 3, 4, 5]);
        assert_eq!(t.vertex_label(0), "St");
        assert_eq!((height(&t, 0), height(&t, 1)), (0, 1));
        assert!(g2_series().validate().is_ok());
    }

    #[test]
    fn g2_is_tilting() {
        let t = g2_tree(G2_QSQ, G2_ELL).unwrap();
        let alg = TreeAlgebra::from_tree(&t, G2_ELL).unwrap();
        assert_eq!(check_tilting(&alg).unwrap().end_dim, 114);
    }

    #[test]
    fn lines() {
        let t = line_tree(4, 3, 1).unwrap();
        assert_eq!(t.vertex_label(0), "(4)");
        assert_eq!(t.vertex_label(1), "(3,1^1)");
        assert_eq!(t.vertex_label(3), "(1^4)");
        assert_eq!(fixture_series("line3").unwrap().h0, 3);
        assert!(fixture_series("line0").is_err());
        assert!(fixture_series("e9").is_err());
    }
}
