//! Small lattices that come up over and over.

use crate::construct::product;
use crate::lattice::Lattice;

/// The chain with `n` elements, labelled `0..n-1`.
pub fn chain(n: usize) -> Lattice {
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let covers: Vec<(String, String)> =
        (1..n).map(|i| (labels[i - 1].clone(), labels[i].clone())).collect();
    Lattice::from_covers(format!("chain{n}"), &labels, &covers).expect("chains are lattices")
}

/// `0 < a, b, c < 1`
pub fn m3() -> Lattice {
    diamond(3).with_name("M3")
}

/// `M_k`: bottom, top and `k` pairwise incomparable atoms.
pub fn diamond(k: usize) -> Lattice {
    let atoms: Vec<String> = (0..k)
        .map(|i| if k <= 26 { ((b'a' + i as u8) as char).to_string() } else { format!("a{i}") })
        .collect();
    let mut labels = vec!["0".to_string()];
    labels.extend(atoms.iter().cloned());
    labels.push("1".to_string());
    let mut covers = Vec::new();
    for a in &atoms {
        covers.push(("0".to_string(), a.clone()));
    }
    for a in &atoms {
        covers.push((a.clone(), "1".to_string()));
    }
    Lattice::from_covers(format!("M{k}"), &labels, &covers).expect("diamonds are lattices")
}

/// `0 < a < c < 1`, `0 < b < 1`
pub fn n5() -> Lattice {
    Lattice::from_covers(
        "N5",
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("a", "c"), ("c", "1"), ("b", "1")],
    )
    .expect("N5 is a lattice")
}

/// The Boolean lattice of subsets of a `k`-element set.
///
/// Elements are listed by rank, so the atoms directly follow the bottom.
/// Atoms are labelled `a`, `b`, ...; other elements concatenate their atoms,
/// except the bottom `0` and (for `k >= 1`) the top `1`.
pub fn boolean(k: usize) -> Lattice {
    assert!(k <= 6, "boolean lattice too large");
    let mut masks: Vec<u32> = (0..1u32 << k).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    let full = (1u32 << k) - 1;
    let label = |m: u32| -> String {
        if m == 0 {
            "0".into()
        } else if m == full {
            "1".into()
        } else {
            (0..k).filter(|i| m & (1 << i) != 0).map(|i| (b'a' + i as u8) as char).collect()
        }
    };
    let labels: Vec<String> = masks.iter().map(|&m| label(m)).collect();
    let mut covers = Vec::new();
    for &m in &masks {
        for i in 0..k {
            if m & (1 << i) == 0 {
                covers.push((label(m), label(m | 1 << i)));
            }
        }
    }
    Lattice::from_covers(format!("B{}", 1u32 << k), &labels, &covers).expect("Boolean lattices are lattices")
}

/// The `rows x cols` grid, i.e. the product of two chains.
pub fn grid(rows: usize, cols: usize) -> Lattice {
    product(&chain(rows), &chain(cols)).with_name(format!("grid{rows}x{cols}"))
}

/// `base` with a chain of `extra` new elements stacked above its top.
pub fn with_top_chain(base: &Lattice, extra: usize) -> Lattice {
    let mut labels: Vec<String> = base.labels().to_vec();
    let mut covers: Vec<(String, String)> =
        base.covers().iter().map(|&(a, b)| (base.label(a).to_string(), base.label(b).to_string())).collect();
    let mut below = base.label(base.top()).to_string();
    for i in 1..=extra {
        let t = format!("t{i}");
        covers.push((below, t.clone()));
        labels.push(t.clone());
        below = t;
    }
    Lattice::from_covers(format!("{}+{}", base.name(), extra), &labels, &covers)
        .expect("stacking a chain keeps a lattice")
}
