use crate::block::BlockOperator;
use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    Operator,
    Trace,
    Frobenius,
}

/// Norm of a block operator.
///
/// The operator decomposes as a direct sum over connected components of its
/// block graph, so singular values are computed one component at a time.
pub fn norm(a: &BlockOperator, kind: NormKind) -> f64 {
    if kind == NormKind::Frobenius {
        return a.blocks().map(|(_, b)| b.frobenius_sq()).sum::<f64>().sqrt();
    }
    let mut op: f64 = 0.0;
    let mut tr = 0.0;
    for (rows, cols) in a.components() {
        let m = a.component_dense(&rows, &cols);
        let sv = linalg::singular_values(m.view());
        op = op.max(sv.first().copied().unwrap_or(0.0));
        tr += sv.iter().sum::<f64>();
    }
    match kind {
        NormKind::Operator => op,
        NormKind::Trace => tr,
        NormKind::Frobenius => unreachable!(),
    }
}
