use exactmath::Field;

/// A subspace of F^dim kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Subspace<F> {
    pub dim: usize,
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(dim: usize) -> Self {
        Subspace { dim, rows: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        let mut s = Self::zero(dim);
        for i in 0..dim {
            let mut v = vec![F::zero(); dim];
            v[i] = F::one();
            s.insert(&v);
        }
        s
    }

    pub fn spanned(dim: usize, vecs: &[Vec<F>]) -> Self {
        let mut s = Self::zero(dim);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<Vec<F>> {
        self.rows.iter().map(|(_, v)| v.clone()).collect()
    }

    /// The canonical representative of v modulo this subspace (pivot
    /// coordinates cleared).
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = x.clone() - f.clone() * y;
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds v; returns whether the rank grew.
    pub fn insert(&mut self, v: &[F]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else { return false };
        let inv = r[p].inv();
        let r: Vec<F> = r.into_iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    *x = x.clone() - f.clone() * y;
                }
            }
        }
        self.rows.push((p, r));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }

    pub fn contains_space(&self, other: &Subspace<F>) -> bool {
        other.rows.iter().all(|(_, v)| self.contains(v))
    }

    pub fn equals(&self, other: &Subspace<F>) -> bool {
        self.rank() == other.rank() && self.contains_space(other)
    }
}
