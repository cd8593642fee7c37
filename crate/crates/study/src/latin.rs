//! Counterbalanced technique orders.

use horizon_core::Technique;

/// First row of a balanced 4x4 Latin square; row `p` adds `p` mod 4.
const BASE_ROW: [usize; 4] = [0, 1, 3, 2];

/// Technique order for a participant: row `participant mod 4` of the square.
pub fn technique_order(participant: usize) -> [Technique; 4] {
    let p = participant % 4;
    BASE_ROW.map(|k| Technique::ALL[(k + p) % 4])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_form_latin_square() {
        let rows: Vec<_> = (0..4).map(technique_order).collect();
        for pos in 0..4 {
            let mut col: Vec<_> = rows.iter().map(|r| r[pos]).collect();
            col.sort();
            assert_eq!(col, Technique::ALL.to_vec());
        }
        for r in &rows {
            let mut r = r.to_vec();
            r.sort();
            assert_eq!(r, Technique::ALL.to_vec());
        }
    }

    #[test]
    fn each_technique_follows_each_other_once() {
        let mut pairs = std::collections::HashSet::new();
        for p in 0..4 {
            let r = technique_order(p);
            for w in r.windows(2) {
                assert!(pairs.insert((w[0], w[1])));
            }
        }
        assert_eq!(pairs.len(), 12);
    }
}
