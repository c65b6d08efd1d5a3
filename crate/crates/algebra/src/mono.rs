//! Exponent vectors ordered by graded lexicographic order.

use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn var(n: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Mono(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Mono(out))
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        // x^2 > x*y > y^2 > x > y > 1 with x first
        let mut v = vec![
            Mono(vec![0, 1]),
            Mono(vec![2, 0]),
            Mono(vec![0, 0]),
            Mono(vec![1, 1]),
            Mono(vec![1, 0]),
            Mono(vec![0, 2]),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                Mono(vec![0, 0]),
                Mono(vec![0, 1]),
                Mono(vec![1, 0]),
                Mono(vec![0, 2]),
                Mono(vec![1, 1]),
                Mono(vec![2, 0]),
            ]
        );
    }
}
