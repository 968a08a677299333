use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::{Face, SimplicialComplex};
use crate::poset::{ElementId, FinitePoset};

/// `Δ(P)`: the complex of chains of `P`.
pub fn order_complex(poset: &FinitePoset) -> SimplicialComplex {
    let mut all = FixedBitSet::with_capacity(poset.len());
    all.insert_range(..);
    order_complex_of(poset, &all)
}

/// Order complex of the subposet induced on `subset`; the void complex when
/// `subset` is empty.
pub fn order_complex_of(poset: &FinitePoset, subset: &FixedBitSet) -> SimplicialComplex {
    let (members, pairs) = poset.induced_covers(subset);
    if members.is_empty() {
        return SimplicialComplex::void();
    }
    let vertices: Arc<[Arc<str>]> = members.iter().map(|&m| Arc::from(poset.label(m))).collect();
    let k = members.len();
    let mut up = vec![Vec::new(); k];
    let mut has_down = vec![false; k];
    for &(a, b) in &pairs {
        up[a].push(b as u32);
        has_down[b] = true;
    }

    // Maximal chains are cover paths from a minimal to a maximal element.
    let mut facets: Vec<Face> = Vec::new();
    let mut path: Vec<u32> = Vec::new();
    let mut stack: Vec<(u32, usize)> = Vec::new();
    for start in (0..k).filter(|&i| !has_down[i]) {
        stack.push((start as u32, 0));
        path.push(start as u32);
        while let Some(top) = stack.last_mut() {
            let (node, next) = *top;
            let succ = &up[node as usize];
            if succ.is_empty() {
                let mut f = path.clone();
                f.sort_unstable();
                facets.push(f);
            }
            if next < succ.len() {
                top.1 += 1;
                let child = succ[next];
                stack.push((child, 0));
                path.push(child);
            } else {
                stack.pop();
                path.pop();
            }
        }
    }
    facets.sort_unstable();
    SimplicialComplex::from_parts(vertices, facets)
}

/// `Δ(x, y)`: order complex of the open interval.
pub fn order_complex_open_interval(poset: &FinitePoset, x: ElementId, y: ElementId) -> SimplicialComplex {
    order_complex_of(poset, &poset.open_interval_set(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::boolean_lattice;

    #[test]
    fn antichain_and_chain() {
        let anti = FinitePoset::from_covers(&["a", "b"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(order_complex(&anti).facets_labeled(), vec![vec!["a"], vec!["b"]]);
        let chain = FinitePoset::from_covers(&["x", "y"], &[("x", "y")]).unwrap();
        assert_eq!(order_complex(&chain).facets_labeled(), vec![vec!["x", "y"]]);
    }

    #[test]
    fn proper_part_of_b3_plus_top() {
        let bar = boolean_lattice(3).unwrap().remove_min().unwrap();
        assert_eq!(order_complex(&bar).f_vector().0, vec![1, 7, 12, 6]);
    }

    #[test]
    fn dual_has_same_order_complex() {
        let p = boolean_lattice(3).unwrap();
        assert_eq!(order_complex(&p), order_complex(&p.dual()));
    }

    #[test]
    fn purity_tracks_gradedness() {
        let graded = boolean_lattice(2).unwrap();
        assert!(order_complex(&graded).is_pure());
        let p = FinitePoset::from_covers(&["0", "a", "b", "c"], &[("0", "a"), ("0", "b"), ("b", "c")]).unwrap();
        assert!(!order_complex(&p).is_pure());
    }
}
