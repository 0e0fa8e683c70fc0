use crate::error::Error;
use crate::matrix::SquareMatrix;
use crate::model::ResourceGraph;

/// All-pairs shortest-path costs between the devices of `rg`, indexed like
/// [`ResourceGraph::devices`].
///
/// Fails with [`Error::UnreachablePair`] naming the first disconnected pair
/// (in index order).
pub fn effective_connectivity(rg: &ResourceGraph) -> Result<SquareMatrix, Error> {
    let n = rg.len();
    let mut d = SquareMatrix::filled(n, f64::INFINITY);
    for i in 0..n {
        d[(i, i)] = 0.0;
    }
    for link in rg.links() {
        // ids were validated on construction
        let a = rg.index_of(link.a).expect("validated link endpoint");
        let b = rg.index_of(link.b).expect("validated link endpoint");
        d[(a, b)] = link.cost;
        d[(b, a)] = link.cost;
    }
    let d = shortest_path_closure(&d);
    for i in 0..n {
        for j in i + 1..n {
            if d.get(i, j) == f64::INFINITY {
                let ids = rg.devices();
                return Err(Error::UnreachablePair(ids[i].id, ids[j].id));
            }
        }
    }
    Ok(d)
}

/// Floyd–Warshall closure of a symmetric weight matrix. Missing edges are
/// `f64::INFINITY`.
pub fn shortest_path_closure(weights: &SquareMatrix) -> SquareMatrix {
    let n = weights.n();
    let mut d = weights.clone();
    for k in 0..n {
        for i in 0..n {
            let dik = d.get(i, k);
            if dik == f64::INFINITY {
                continue;
            }
            for j in 0..n {
                let via = dik + d.get(k, j);
                if via < d.get(i, j) {
                    d[(i, j)] = via;
                }
            }
        }
    }
    d
}
