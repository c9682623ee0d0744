use num_traits::Zero;

use crate::genfun::{BiSeries, BiWord, Letter};
use crate::ncalg::{NCMatrix, NCSeries};
use crate::rational::RationalMatrix;
use crate::Q;

/// Prefix trie over the monomials of `f`, so shared prefixes such as the
/// powers `(XZ)^k` are multiplied out once.
#[derive(Default)]
struct Trie {
    coeff: Option<Q>,
    x: Option<Box<Trie>>,
    z: Option<Box<Trie>>,
}

impl Trie {
    fn insert(&mut self, w: &BiWord, c: &Q) {
        let mut node = self;
        for l in w.letters() {
            let slot = match l {
                Letter::X => &mut node.x,
                Letter::Z => &mut node.z,
            };
            node = slot.get_or_insert_with(Default::default);
        }
        node.coeff = Some(c.clone());
    }

    fn is_leaf(&self) -> bool {
        self.x.is_none() && self.z.is_none()
    }
}

/// `tr f(X, w)` where `X` puts `x_{vars[r]}` on row `r` and `w` is constant.
pub(crate) fn trace_eval(f: &BiSeries, vars: &[usize], nvars: usize, w: &RationalMatrix, trunc: usize) -> NCSeries {
    let mut root = Trie::default();
    for (word, c) in f.terms() {
        if word.x_degree() <= trunc {
            root.insert(word, c);
        }
    }
    let ctx = Ctx { vars, w };
    let mut out = NCSeries::zero(nvars, trunc);
    let id = NCMatrix::identity(vars.len(), nvars, trunc);
    if let Some(c) = &root.coeff {
        out.add_scaled_assign(&id.trace(), c);
    }
    walk(&root, &id, &ctx, &mut out);
    out
}

struct Ctx<'a> {
    vars: &'a [usize],
    w: &'a RationalMatrix,
}

fn walk(node: &Trie, m: &NCMatrix, ctx: &Ctx<'_>, out: &mut NCSeries) {
    for (letter, child) in [(Letter::X, &node.x), (Letter::Z, &node.z)] {
        let Some(child) = child else { continue };
        if child.is_leaf() {
            // only the trace of the final product is needed
            let c = child.coeff.as_ref().expect("leaf nodes end a word");
            let t = match letter {
                Letter::X => m.trace_mul_block_scalar(ctx.vars),
                Letter::Z => m.trace_mul_rational(ctx.w),
            };
            out.add_scaled_assign(&t, c);
            continue;
        }
        let next = match letter {
            Letter::X => m.mul_block_scalar_right(ctx.vars),
            Letter::Z => m.mul_rational_right(ctx.w),
        };
        if next.is_zero() {
            continue;
        }
        if let Some(c) = &child.coeff {
            if !c.is_zero() {
                out.add_scaled_assign(&next.trace(), c);
            }
        }
        walk(child, &next, ctx, out);
    }
}
