//! Digraph families: suspensions, layered towers, and the loop-to-2-cycle
//! rewrite.

use super::{Digraph, ParsedDigraph};
use crate::error::Error;

/// Replaces every recorded self-loop `(v, v)` by a fresh vertex `v'` and the
/// 2-cycle `v -> v' -> v`. Fresh labels are `<v>__loop<k>` with the smallest
/// unused `k`.
pub fn loop_transform(parsed: &ParsedDigraph) -> Digraph {
    let mut d = parsed.digraph.clone();
    for &v in &parsed.loops {
        let base = d.label(v).to_string();
        let mut k = 0usize;
        let fresh = loop {
            let candidate = format!("{base}__loop{k}");
            if d.index_of(&candidate).is_none() {
                break candidate;
            }
            k += 1;
        };
        let w = d.add_vertex(&fresh).expect("label checked fresh");
        d.add_arc(v, w).expect("distinct vertices");
        d.add_arc(w, v).expect("distinct vertices");
    }
    d
}

/// Applies `k` suspension steps. Step `i` (1-based) adds poles `pole<i>_N`
/// and `pole<i>_S` and an arc from every existing vertex to each pole.
pub fn suspension(d: &Digraph, k: usize) -> Result<Digraph, Error> {
    if d.is_empty() {
        return Err(Error::EmptyDigraph);
    }
    if k == 0 {
        return Err(Error::InvalidArgument(
            "suspension count must be at least 1".into(),
        ));
    }
    let mut out = d.clone();
    for i in 1..=k {
        let existing = out.vertex_count();
        let north = out.fresh_label(&format!("pole{i}_N"));
        let north = out.add_vertex(&north)?;
        let south = out.fresh_label(&format!("pole{i}_S"));
        let south = out.add_vertex(&south)?;
        for v in 0..existing {
            out.add_arc(v, north)?;
            out.add_arc(v, south)?;
        }
    }
    Ok(out)
}

/// The layered digraph with vertices `1..=N` split into consecutive layers of
/// the given sizes and every arc from layer `l` to layer `l + 1`.
pub fn k_partite_tower(layer_sizes: &[usize]) -> Result<Digraph, Error> {
    if layer_sizes.is_empty() || layer_sizes.contains(&0) {
        return Err(Error::InvalidArgument(
            "layer sizes must be a non-empty list of positive integers".into(),
        ));
    }
    let total: usize = layer_sizes.iter().sum();
    let mut d = Digraph::new();
    for v in 1..=total {
        d.add_vertex(&v.to_string())?;
    }
    let mut offset = 0;
    for pair in layer_sizes.windows(2) {
        let next = offset + pair[0];
        for u in offset..next {
            for v in next..next + pair[1] {
                d.add_arc(u, v)?;
            }
        }
        offset = next;
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{parse_edge_list_with, LoopPolicy};

    fn two_cycle() -> Digraph {
        Digraph::from_arcs(&[("a", "b"), ("b", "a")]).unwrap()
    }

    #[test]
    fn loop_transform_examples() {
        let p = parse_edge_list_with("a a\n", LoopPolicy::Record).unwrap();
        let d = loop_transform(&p);
        let labels: Vec<_> = d.labels().iter().map(|l| l.as_str()).collect();
        assert_eq!(labels, ["a", "a__loop0"]);
        assert!(d.has_arc(0, 1) && d.has_arc(1, 0));
        assert_eq!(d.arc_count(), 2);

        let plain = parse_edge_list_with("a b\nb c\n", LoopPolicy::Record).unwrap();
        assert_eq!(loop_transform(&plain), plain.digraph);

        let two = parse_edge_list_with("a a\na a\n", LoopPolicy::Record).unwrap();
        let d = loop_transform(&two);
        assert_eq!(d.vertex_count(), 3);
        assert_eq!(d.label(2), "a__loop1");
        assert_eq!(d.arc_count(), 4);
    }

    #[test]
    fn loop_transform_skips_taken_labels() {
        let p = parse_edge_list_with("a a__loop0\na a\n", LoopPolicy::Record).unwrap();
        let d = loop_transform(&p);
        assert_eq!(d.label(2), "a__loop1");
    }

    #[test]
    fn suspension_examples() {
        let s1 = suspension(&two_cycle(), 1).unwrap();
        assert_eq!((s1.vertex_count(), s1.arc_count()), (4, 6));
        assert_eq!(s1.label(2), "pole1_N");
        assert_eq!(s1.label(3), "pole1_S");
        let s2 = suspension(&two_cycle(), 2).unwrap();
        assert_eq!((s2.vertex_count(), s2.arc_count()), (6, 14));
        let mut point = Digraph::new();
        point.add_vertex("x").unwrap();
        let p1 = suspension(&point, 1).unwrap();
        assert_eq!((p1.vertex_count(), p1.arc_count()), (3, 2));
        assert!(suspension(&Digraph::new(), 1).is_err());
        assert!(suspension(&point, 0).is_err());
    }

    #[test]
    fn tower_examples() {
        let d = k_partite_tower(&[2, 2]).unwrap();
        assert_eq!((d.vertex_count(), d.arc_count()), (4, 4));
        let diamond = k_partite_tower(&[1, 2, 1]).unwrap();
        assert_eq!((diamond.vertex_count(), diamond.arc_count()), (4, 4));
        assert!(diamond.has_arc(0, 1) && diamond.has_arc(0, 2));
        assert!(diamond.has_arc(1, 3) && diamond.has_arc(2, 3));
        let t = k_partite_tower(&[2, 2, 2]).unwrap();
        assert_eq!((t.vertex_count(), t.arc_count()), (6, 8));
        assert!(k_partite_tower(&[]).is_err());
        assert!(k_partite_tower(&[2, 0]).is_err());
    }
}
