use super::{decode_into, table_len, Cochain};

/// Table indices of tuples with no identity entry, in increasing order.
pub fn free_positions(base_order: usize, degree: usize) -> Vec<usize> {
    let mut t = vec![0; degree];
    (0..table_len(base_order, degree))
        .filter(|&idx| {
            decode_into(idx, base_order, &mut t);
            t.iter().all(|&a| a != 0)
        })
        .collect()
}

/// Number of normalized `degree`-cochains `G -> N`: `|N|^((|G|-1)^p)`.
/// Saturates at `u128::MAX`.
pub fn cochain_count(base_order: usize, coeff_order: usize, degree: usize) -> u128 {
    let free = (base_order.saturating_sub(1) as u128).checked_pow(degree as u32);
    match free.and_then(|k| u32::try_from(k).ok()) {
        Some(k) => (coeff_order as u128).checked_pow(k).unwrap_or(u128::MAX),
        None if coeff_order <= 1 => 1,
        None => u128::MAX,
    }
}

/// Normalized cochains in lexicographic order of their tables.
///
/// The enumeration index of a cochain is its free-position values read as
/// a base-`|N|` numeral, most significant first, so index ranges can be
/// handed to independent workers.
#[derive(Debug, Clone)]
pub struct NormalizedCochains {
    base_order: usize,
    coeff_order: usize,
    degree: usize,
    free: Vec<usize>,
    digits: Vec<usize>,
    next: u128,
    end: u128,
}

impl NormalizedCochains {
    pub fn new(base_order: usize, coeff_order: usize, degree: usize) -> Self {
        let end = cochain_count(base_order, coeff_order, degree);
        Self::range(base_order, coeff_order, degree, 0, end)
    }

    /// The cochains with enumeration index in `start..end`.
    pub fn range(base_order: usize, coeff_order: usize, degree: usize, start: u128, end: u128) -> Self {
        let free = free_positions(base_order, degree);
        let mut digits = vec![0; free.len()];
        let mut k = start;
        for d in digits.iter_mut().rev() {
            *d = (k % coeff_order as u128) as usize;
            k /= coeff_order as u128;
        }
        NormalizedCochains { base_order, coeff_order, degree, free, digits, next: start, end }
    }

    /// Table values for a cochain given by its free-position digits.
    pub fn table_from_digits(&self, digits: &[usize]) -> Cochain {
        let mut values = vec![0; table_len(self.base_order, self.degree)];
        for (&pos, &d) in self.free.iter().zip(digits) {
            values[pos] = d;
        }
        Cochain { degree: self.degree, base_order: self.base_order, values }
    }

    /// Enumeration index of a normalized cochain.
    pub fn index_of(c: &Cochain, coeff_order: usize) -> u128 {
        free_positions(c.base_order(), c.degree())
            .into_iter()
            .fold(0u128, |acc, pos| acc * coeff_order as u128 + c.values()[pos] as u128)
    }
}

impl Iterator for NormalizedCochains {
    type Item = Cochain;

    fn next(&mut self) -> Option<Cochain> {
        if self.next >= self.end {
            return None;
        }
        let out = self.table_from_digits(&self.digits);
        self.next += 1;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.coeff_order {
                break;
            }
            *d = 0;
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.end - self.next).unwrap_or(usize::MAX);
        (left, usize::try_from(self.end - self.next).ok())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(cochain_count(2, 2, 2), 2);
        assert_eq!(cochain_count(4, 4, 2), 4u128.pow(9));
        assert_eq!(cochain_count(1, 5, 2), 1);
        assert_eq!(cochain_count(3, 3, 0), 3);
        assert_eq!(cochain_count(5, 1, 3), 1);
    }

    #[test]
    fn enumeration_is_sorted_normalized_and_complete() {
        for (m, n, p) in [(2, 3, 1), (3, 2, 2), (3, 3, 0), (1, 4, 2), (3, 2, 3)] {
            let all: Vec<Cochain> = NormalizedCochains::new(m, n, p).collect();
            assert_eq!(all.len() as u128, cochain_count(m, n, p));
            assert!(all.windows(2).all(|w| w[0].values() < w[1].values()));
            assert!(all.iter().all(Cochain::is_normalized));
            for (i, c) in all.iter().enumerate() {
                assert_eq!(NormalizedCochains::index_of(c, n), i as u128);
            }
        }
    }

    #[test]
    fn ranges_concatenate() {
        let all: Vec<Cochain> = NormalizedCochains::new(3, 3, 2).collect();
        let mut pieces = Vec::new();
        for (a, b) in [(0u128, 30u128), (30, 31), (31, all.len() as u128)] {
            pieces.extend(NormalizedCochains::range(3, 3, 2, a, b));
        }
        assert_eq!(all, pieces);
    }
}
