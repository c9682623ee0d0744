use crate::commalg::{CommMatrix, CommSeries};
use crate::seifert::SeifertMatrix;
use crate::{Result, Q};

/// Normalized `det((I + X)^{-1/2} (I + X Z_A))` over commuting `x_i`, with
/// constant term 1.
pub fn torsion_polynomial(a: &SeifertMatrix, n: usize) -> Result<CommSeries> {
    let z = a.z_matrix()?;
    let nvars = a.components();
    let vars = a.structure().row_components();
    let half = Q::new((-1).into(), 2.into());
    let scales = (0..nvars)
        .map(|i| (CommSeries::one(nvars, n) + CommSeries::var(nvars, n, i)).unit_power(&half))
        .collect::<Result<Vec<_>>>()?;
    let dim = a.size();
    let mut m = CommMatrix::zero(dim, nvars, n);
    for r in 0..dim {
        let x = CommSeries::var(nvars, n, vars[r]);
        for c in 0..dim {
            let mut e = x.scale(z.matrix.get(r, c));
            if r == c {
                e = e + CommSeries::one(nvars, n);
            }
            m.set(r, c, &scales[vars[r]] * &e);
        }
    }
    m.det_unit()
}
