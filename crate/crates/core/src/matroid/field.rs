//! Arithmetic over a small prime field and incremental row reduction.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub const MAX_PRIME: u32 = 257;

    pub fn new(p: u32) -> Option<Self> {
        if (2..=Self::MAX_PRIME).contains(&p) && is_prime(p) {
            Some(Self { p })
        } else {
            None
        }
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    fn pow(self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

#[derive(Debug, Clone)]
struct Row {
    pivot: usize,
    values: Vec<u32>,
    /// Coefficients expressing this row in terms of the inserted vectors.
    combo: Vec<u32>,
}

/// Row-echelon basis of the span of the vectors inserted so far.
///
/// Each stored row is reduced against all earlier rows, so every row is zero
/// at the pivots of its predecessors and one pass in insertion order reduces
/// any vector completely. When `track` is set the rows also carry the linear
/// combination of inserted vectors that produced them, which is what circuit
/// extraction needs.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: PrimeField,
    rows: Vec<Row>,
    inserted: usize,
    track: bool,
}

impl Echelon {
    pub fn new(field: PrimeField, track: bool) -> Self {
        Self {
            field,
            rows: Vec::new(),
            inserted: 0,
            track,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `values` in place; returns the pivot of the remainder, if nonzero.
    fn reduce(&self, values: &mut [u32], mut combo: Option<&mut [u32]>) -> Option<usize> {
        let f = self.field;
        for row in &self.rows {
            let x = values[row.pivot];
            if x == 0 {
                continue;
            }
            let factor = f.mul(x, f.inv(row.values[row.pivot]));
            for (v, &r) in values.iter_mut().zip(&row.values).skip(row.pivot) {
                *v = f.sub(*v, f.mul(factor, r));
            }
            if let Some(c) = combo.as_deref_mut() {
                for (c, &r) in c.iter_mut().zip(&row.combo) {
                    *c = f.sub(*c, f.mul(factor, r));
                }
            }
        }
        values.iter().position(|&v| v != 0)
    }

    /// True if `column` lies outside the current span.
    pub fn accepts(&self, column: &[u32]) -> bool {
        let mut v = column.to_vec();
        self.reduce(&mut v, None).is_some()
    }

    /// Inserts `column` if it is independent of the stored rows.
    pub fn insert(&mut self, column: &[u32]) -> bool {
        let mut values = column.to_vec();
        let mut combo = Vec::new();
        if self.track {
            combo = vec![0; self.inserted + 1];
            combo[self.inserted] = 1;
            for row in &mut self.rows {
                row.combo.push(0);
            }
        }
        let pivot = self.reduce(&mut values, self.track.then_some(&mut combo[..]));
        self.inserted += 1;
        match pivot {
            Some(pivot) => {
                self.rows.push(Row {
                    pivot,
                    values,
                    combo,
                });
                true
            }
            None => false,
        }
    }

    /// For a column inside the span, the indices (in insertion order) of the
    /// inserted vectors with nonzero coefficient in its unique expression.
    /// Only meaningful when every inserted vector was independent.
    pub fn dependency(&self, column: &[u32]) -> Option<Vec<usize>> {
        assert!(self.track, "dependency requires combination tracking");
        let mut values = column.to_vec();
        let mut combo = vec![0u32; self.inserted];
        if self.reduce(&mut values, Some(&mut combo)).is_some() {
            return None;
        }
        // column = sum(factor_i * row_i) and `combo` holds the negated coefficients.
        Some(
            combo
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c != 0)
                .map(|(i, _)| i)
                .collect(),
        )
    }
}
