//! Presentations on x, y and an abelian G' given by module data.

use coclass_pc::{Element, PcError, PcPresentation};

/// Data for a group generated by x, y whose derived subgroup is abelian with
/// basis b_0, b_1, ... All vectors are integer coordinates over that basis.
#[derive(Clone, Debug)]
pub struct ModuleData {
    pub basis: Vec<String>,
    /// b_i^3
    pub powers: Vec<Vec<i64>>,
    /// [b_i, x]
    pub act_x: Vec<Vec<i64>>,
    /// [b_i, y]
    pub act_y: Vec<Vec<i64>>,
    pub x_cube: Vec<i64>,
    pub y_cube: Vec<i64>,
    /// [y, x]
    pub yx: Vec<i64>,
}

impl ModuleData {
    /// Reduce an integer vector to exponents in {0,1,2}, carrying through
    /// the power relations of the basis.
    pub fn normalize(&self, v: &[i64]) -> Result<Vec<u8>, PcError> {
        let d = self.basis.len();
        let mut v = v.to_vec();
        let mut out = vec![0u8; d];
        for i in 0..d {
            let q = v[i].div_euclid(3);
            out[i] = v[i].rem_euclid(3) as u8;
            if q != 0 {
                for (j, &c) in self.powers[i].iter().enumerate() {
                    if c != 0 && j <= i {
                        return Err(PcError::Input(format!("power of {} is not deeper", self.basis[i])));
                    }
                    v[j] += q * c;
                }
            }
        }
        Ok(out)
    }

    pub fn build(&self) -> Result<PcPresentation, PcError> {
        let d = self.basis.len();
        let n = d + 2;
        let lift = |v: &[i64]| -> Result<Element, PcError> {
            let mut exps = vec![0u8, 0u8];
            exps.extend(self.normalize(v)?);
            Ok(Element::from_exps(exps))
        };
        let mut names = vec!["x".to_string(), "y".to_string()];
        names.extend(self.basis.iter().cloned());
        let mut power = vec![lift(&self.x_cube)?, lift(&self.y_cube)?];
        for p in &self.powers {
            power.push(lift(p)?);
        }
        let mut comm: Vec<Vec<Element>> = Vec::with_capacity(n);
        comm.push(Vec::new());
        comm.push(vec![lift(&self.yx)?]);
        for i in 0..d {
            let mut row = vec![lift(&self.act_x[i])?, lift(&self.act_y[i])?];
            row.extend((0..i).map(|_| Element::identity(n)));
            comm.push(row);
        }
        PcPresentation::new(names, power, comm)
    }
}
