//! Branch sizes and widths from descendant numbers, for depth at most 3.

use crate::tree::StructuredTree;
use crate::TreeError;

/// N1 of a vertex and the descendant data of its capable children. For a
/// mainline vertex the mainline child is left out of `capable`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Descendants {
    pub n1: u32,
    pub capable: Vec<Descendants>,
}

impl Descendants {
    pub fn leaf_count(n1: u32) -> Self {
        Descendants { n1, capable: Vec::new() }
    }
}

/// Predicted #B(e) for a tree of depth d from the data of m_e.
pub fn branch_size_formula(d: u32, m: &Descendants) -> Result<u32, TreeError> {
    match d {
        1 => Ok(m.n1),
        2 => Ok(m.n1 + m.capable.iter().map(|v| v.n1).sum::<u32>()),
        3 => Ok(m.n1
            + m.capable.iter().map(|v| v.n1 + v.capable.iter().map(|w| w.n1).sum::<u32>()).sum::<u32>()),
        _ => Err(TreeError::Unsupported(format!("depth {d} > 3"))),
    }
}

/// Predicted width from the data of m_{n*}, m_{n*+1}, ...; needs entries
/// up to index pre + len + d - 2.
pub fn width_formula(mainline: &[Descendants], d: u32, pre: u32, len: u32) -> Result<u32, TreeError> {
    let need = (pre + len + d).saturating_sub(2) as usize;
    if mainline.len() <= need {
        return Err(TreeError::Unsupported(format!("need {} mainline vertices, got {}", need + 1, mainline.len())));
    }
    let cap1 = |m: &Descendants| m.capable.iter().map(|v| v.n1).sum::<u32>();
    let cap2 = |m: &Descendants| m.capable.iter().map(|v| v.capable.iter().map(|w| w.n1).sum::<u32>()).sum::<u32>();
    let top = (pre + len) as usize;
    match d {
        1 => Ok((0..top).map(|i| mainline[i].n1).max().unwrap_or(0)),
        2 => {
            let mut w = mainline[0].n1;
            for i in 2..=top + 1 {
                w = w.max(mainline[i - 1].n1 + cap1(&mainline[i - 2]));
            }
            Ok(w)
        }
        3 => {
            let mut w = mainline[0].n1.max(mainline[1].n1 + cap1(&mainline[0]));
            for i in 3..=top + 2 {
                w = w.max(mainline[i - 1].n1 + cap1(&mainline[i - 2]) + cap2(&mainline[i - 3]));
            }
            Ok(w)
        }
        _ => Err(TreeError::Unsupported(format!("depth {d} > 3"))),
    }
}

/// Descendant data of a mainline vertex, read off a constructed tree.
pub fn descendants_of(t: &StructuredTree, v: usize) -> Descendants {
    fn below(t: &StructuredTree, v: usize) -> Descendants {
        let ch = &t.vertices[v].children;
        Descendants {
            n1: ch.len() as u32,
            capable: ch.iter().filter(|&&c| !t.vertices[c].children.is_empty()).map(|&c| below(t, c)).collect(),
        }
    }
    let ch = &t.vertices[v].children;
    Descendants {
        n1: ch.len() as u32,
        capable: ch
            .iter()
            .filter(|&&c| !t.vertices[c].mainline && !t.vertices[c].children.is_empty())
            .map(|&c| below(t, c))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_sizes() {
        assert_eq!(branch_size_formula(1, &Descendants::leaf_count(21)).unwrap(), 21);
        let m = Descendants { n1: 13, capable: vec![Descendants::leaf_count(25)] };
        assert_eq!(branch_size_formula(2, &m).unwrap(), 38);
        assert_eq!(branch_size_formula(2, &Descendants::leaf_count(1)).unwrap(), 1);
        assert!(branch_size_formula(4, &m).is_err());
    }

    #[test]
    fn widths() {
        // depth 2, pure period 2: 13 + 25 and 25 + 13 + 13 per branch
        let m9 = Descendants { n1: 13, capable: vec![Descendants::leaf_count(25)] };
        let m10 = Descendants { n1: 25, capable: vec![Descendants::leaf_count(13), Descendants::leaf_count(13)] };
        let ml = vec![m9.clone(), m10.clone(), m9];
        assert_eq!(width_formula(&ml, 2, 0, 2).unwrap(), 50);
        // coclass 1
        let ml: Vec<_> = [2, 4, 6, 7].into_iter().map(Descendants::leaf_count).collect();
        assert_eq!(width_formula(&ml, 1, 2, 2).unwrap(), 7);
        let c = vec![Descendants::leaf_count(5); 3];
        assert_eq!(width_formula(&c, 1, 0, 1).unwrap(), 5);
        assert!(width_formula(&c[..1], 2, 0, 2).is_err());
    }
}
