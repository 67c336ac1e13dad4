//! Instances, allocations and value vectors.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::format_rational;

/// Default cap on brute-force enumeration of the 3^m integer allocations.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

/// One of the three players, ordered I < II < III.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Player {
    I,
    II,
    III,
}

impl Player {
    pub const ALL: [Player; 3] = [Player::I, Player::II, Player::III];

    /// Zero-based row index.
    pub fn index(self) -> usize {
        match self {
            Player::I => 0,
            Player::II => 1,
            Player::III => 2,
        }
    }

    pub fn from_index(i: usize) -> Player {
        Player::ALL[i]
    }

    /// The two players other than `self`, in index order.
    pub fn others(self) -> [Player; 2] {
        match self {
            Player::I => [Player::II, Player::III],
            Player::II => [Player::I, Player::III],
            Player::III => [Player::I, Player::II],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Player::I => "I",
            Player::II => "II",
            Player::III => "III",
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A 3×m evaluation matrix with exact rational entries.
///
/// Every entry is strictly positive (mutual absolute continuity) and every
/// row sums to exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    values: [Vec<BigRational>; 3],
    player_labels: [String; 3],
    item_labels: Vec<String>,
}

impl Instance {
    /// Validates (and optionally row-normalizes) a raw 3×m matrix.
    pub fn new(rows: [Vec<BigRational>; 3], normalize: bool) -> Result<Instance> {
        let m = rows[0].len();
        if m == 0 {
            return Err(Error::EmptyInstance);
        }
        for row in &rows[1..] {
            if row.len() != m {
                return Err(Error::DimensionMismatch { expected: m, got: row.len() });
            }
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                if *a <= BigRational::zero() {
                    return Err(Error::NonPositiveEntry { player: i, item: j });
                }
            }
        }
        let mut values = rows;
        for (i, row) in values.iter_mut().enumerate() {
            let sum: BigRational = row.iter().sum();
            if normalize {
                for a in row.iter_mut() {
                    *a /= sum.clone();
                }
            } else if !sum.is_one() {
                return Err(Error::RowSumMismatch { player: i, sum: format_rational(&sum) });
            }
        }
        let item_labels = (1..=m).map(|j| j.to_string()).collect();
        Ok(Instance {
            values,
            player_labels: ["I".into(), "II".into(), "III".into()],
            item_labels,
        })
    }

    pub fn with_labels(mut self, players: [String; 3], items: Vec<String>) -> Result<Instance> {
        if items.len() != self.item_count() {
            return Err(Error::DimensionMismatch { expected: self.item_count(), got: items.len() });
        }
        self.player_labels = players;
        self.item_labels = items;
        Ok(self)
    }

    /// Number of items m.
    pub fn item_count(&self) -> usize {
        self.values[0].len()
    }

    /// Entry a_{ij}: the value player `p` assigns to item `j`.
    pub fn value(&self, p: Player, item: usize) -> &BigRational {
        &self.values[p.index()][item]
    }

    /// The evaluation column of one item.
    pub fn column(&self, item: usize) -> [&BigRational; 3] {
        [&self.values[0][item], &self.values[1][item], &self.values[2][item]]
    }

    pub fn row(&self, p: Player) -> &[BigRational] {
        &self.values[p.index()]
    }

    pub fn player_label(&self, p: Player) -> &str {
        &self.player_labels[p.index()]
    }

    pub fn item_label(&self, item: usize) -> &str {
        &self.item_labels[item]
    }

    pub fn player_labels(&self) -> &[String; 3] {
        &self.player_labels
    }

    pub fn item_labels(&self) -> &[String] {
        &self.item_labels
    }
}

/// Fractional shares x_{ij}: every share lies in [0,1] and each column sums to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllocationMatrix {
    shares: [Vec<BigRational>; 3],
}

impl AllocationMatrix {
    pub fn new(shares: [Vec<BigRational>; 3]) -> Result<AllocationMatrix> {
        let m = shares[0].len();
        for row in &shares[1..] {
            if row.len() != m {
                return Err(Error::DimensionMismatch { expected: m, got: row.len() });
            }
        }
        for j in 0..m {
            let mut col_sum = BigRational::zero();
            for row in &shares {
                let x = &row[j];
                if *x < BigRational::zero() || *x > BigRational::one() {
                    return Err(Error::ParseInstance(format!(
                        "share {} for item {} outside [0,1]",
                        format_rational(x),
                        j + 1
                    )));
                }
                col_sum += x;
            }
            if !col_sum.is_one() {
                return Err(Error::ParseInstance(format!(
                    "column {} sums to {}",
                    j + 1,
                    format_rational(&col_sum)
                )));
            }
        }
        Ok(AllocationMatrix { shares })
    }

    /// All-zero scratch matrix for incremental construction; validate with
    /// [`AllocationMatrix::new`] once filled.
    pub(crate) fn zeros(m: usize) -> [Vec<BigRational>; 3] {
        [
            vec![BigRational::zero(); m],
            vec![BigRational::zero(); m],
            vec![BigRational::zero(); m],
        ]
    }

    pub fn item_count(&self) -> usize {
        self.shares[0].len()
    }

    pub fn share(&self, p: Player, item: usize) -> &BigRational {
        &self.shares[p.index()][item]
    }

    /// Whole-item allocation as a share matrix.
    pub fn from_integer(alloc: &IntegerAllocation) -> AllocationMatrix {
        let mut shares = AllocationMatrix::zeros(alloc.len());
        for (j, p) in alloc.owners().iter().enumerate() {
            shares[p.index()][j] = BigRational::one();
        }
        AllocationMatrix { shares }
    }
}

/// Whole-item assignment: item j goes to `owners[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerAllocation {
    owners: Vec<Player>,
}

impl IntegerAllocation {
    pub fn new(owners: Vec<Player>) -> IntegerAllocation {
        IntegerAllocation { owners }
    }

    pub fn owners(&self) -> &[Player] {
        &self.owners
    }

    pub fn len(&self) -> usize {
        self.owners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owners.is_empty()
    }
}

impl fmt::Display for IntegerAllocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, p) in self.owners.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Per-player totals (v1, v2, v3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueVector(pub [BigRational; 3]);

impl ValueVector {
    pub fn zero() -> ValueVector {
        ValueVector([BigRational::zero(), BigRational::zero(), BigRational::zero()])
    }

    pub fn get(&self, p: Player) -> &BigRational {
        &self.0[p.index()]
    }

    pub fn is_equitable(&self) -> bool {
        self.0[0] == self.0[1] && self.0[1] == self.0[2]
    }

    pub fn min(&self) -> &BigRational {
        self.0.iter().min().expect("three entries")
    }
}

impl fmt::Display for ValueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            format_rational(&self.0[0]),
            format_rational(&self.0[1]),
            format_rational(&self.0[2])
        )
    }
}

/// Exact per-player totals of `alloc` under `inst`.
pub fn allocation_value(inst: &Instance, alloc: &AllocationMatrix) -> Result<ValueVector> {
    if alloc.item_count() != inst.item_count() {
        return Err(Error::DimensionMismatch {
            expected: inst.item_count(),
            got: alloc.item_count(),
        });
    }
    let mut totals = ValueVector::zero();
    for p in Player::ALL {
        let mut sum = BigRational::zero();
        for j in 0..inst.item_count() {
            let x = alloc.share(p, j);
            if !x.is_zero() {
                sum += inst.value(p, j) * x;
            }
        }
        totals.0[p.index()] = sum;
    }
    Ok(totals)
}

/// Totals of a whole-item assignment.
pub fn integer_allocation_value(inst: &Instance, alloc: &IntegerAllocation) -> Result<ValueVector> {
    if alloc.len() != inst.item_count() {
        return Err(Error::DimensionMismatch { expected: inst.item_count(), got: alloc.len() });
    }
    let mut totals = ValueVector::zero();
    for (j, p) in alloc.owners().iter().enumerate() {
        totals.0[p.index()] += inst.value(*p, j);
    }
    Ok(totals)
}

/// All 3^m whole-item assignments in lexicographic order (I < II < III).
pub fn enumerate_integer_allocations(
    m: usize,
) -> Result<impl Iterator<Item = IntegerAllocation>> {
    enumerate_integer_allocations_with_cap(m, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_integer_allocations_with_cap(
    m: usize,
    cap: usize,
) -> Result<impl Iterator<Item = IntegerAllocation>> {
    if m > cap {
        return Err(Error::CapExceeded { m, cap });
    }
    let total = 3usize.pow(m as u32);
    Ok((0..total).map(move |mut code| {
        let mut owners = vec![Player::I; m];
        for slot in owners.iter_mut().rev() {
            *slot = Player::from_index(code % 3);
            code /= 3;
        }
        IntegerAllocation::new(owners)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::rat;

    #[test]
    fn rejects_zero_entry() {
        let rows = [
            vec![rat(1, 2), rat(1, 2)],
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(1, 2), rat(1, 2)],
        ];
        assert_eq!(
            Instance::new(rows, false),
            Err(Error::NonPositiveEntry { player: 1, item: 1 })
        );
    }

    #[test]
    fn rejects_unnormalized_rows_without_flag() {
        let rows = [
            vec![rat(1, 1), rat(1, 1)],
            vec![rat(1, 1), rat(3, 1)],
            vec![rat(2, 1), rat(2, 1)],
        ];
        assert!(matches!(
            Instance::new(rows.clone(), false),
            Err(Error::RowSumMismatch { player: 0, .. })
        ));
        let inst = Instance::new(rows, true).unwrap();
        assert_eq!(*inst.value(Player::I, 0), rat(1, 2));
        assert_eq!(*inst.value(Player::II, 0), rat(1, 4));
        assert_eq!(*inst.value(Player::II, 1), rat(3, 4));
        assert_eq!(*inst.value(Player::III, 1), rat(1, 2));
    }

    #[test]
    fn rejects_empty_instance() {
        let rows: [Vec<BigRational>; 3] = [vec![], vec![], vec![]];
        assert_eq!(Instance::new(rows, false), Err(Error::EmptyInstance));
    }

    #[test]
    fn diagonal_fixture_value() {
        let inst = fixtures::e1();
        let alloc = IntegerAllocation::new(vec![Player::I, Player::II, Player::III]);
        let v = integer_allocation_value(&inst, &alloc).unwrap();
        assert_eq!(v, ValueVector([rat(4, 5), rat(4, 5), rat(4, 5)]));
    }

    #[test]
    fn uniform_thirds_value() {
        let inst = fixtures::e5();
        let third = rat(1, 3);
        let shares = [
            vec![third.clone(), third.clone()],
            vec![third.clone(), third.clone()],
            vec![third.clone(), third.clone()],
        ];
        let alloc = AllocationMatrix::new(shares).unwrap();
        let v = allocation_value(&inst, &alloc).unwrap();
        assert_eq!(v, ValueVector([rat(1, 3), rat(1, 3), rat(1, 3)]));
    }

    #[test]
    fn e5_hand_solved_split_is_equitable() {
        let inst = fixtures::e5();
        let mut shares = AllocationMatrix::zeros(2);
        shares[0][0] = rat(60, 107);
        shares[2][0] = rat(47, 107);
        shares[1][1] = rat(70, 107);
        shares[2][1] = rat(37, 107);
        let alloc = AllocationMatrix::new(shares).unwrap();
        let v = allocation_value(&inst, &alloc).unwrap();
        assert_eq!(v, ValueVector([rat(42, 107), rat(42, 107), rat(42, 107)]));
    }

    #[test]
    fn identical_rows_make_total_value_one() {
        let inst = Instance::new(
            [
                vec![rat(3, 10), rat(7, 10)],
                vec![rat(3, 10), rat(7, 10)],
                vec![rat(3, 10), rat(7, 10)],
            ],
            false,
        )
        .unwrap();
        let shares = [
            vec![rat(1, 2), rat(1, 5)],
            vec![rat(1, 3), rat(3, 10)],
            vec![rat(1, 6), rat(1, 2)],
        ];
        let alloc = AllocationMatrix::new(shares).unwrap();
        let v = allocation_value(&inst, &alloc).unwrap();
        let total: BigRational = v.0.iter().sum();
        assert_eq!(total, rat(1, 1));
    }

    #[test]
    fn enumeration_order_and_count() {
        let one: Vec<_> = enumerate_integer_allocations(1).unwrap().collect();
        assert_eq!(
            one,
            vec![
                IntegerAllocation::new(vec![Player::I]),
                IntegerAllocation::new(vec![Player::II]),
                IntegerAllocation::new(vec![Player::III]),
            ]
        );
        let two: Vec<_> = enumerate_integer_allocations(2).unwrap().collect();
        assert_eq!(two.len(), 9);
        assert_eq!(two[0].owners(), [Player::I, Player::I]);
        assert_eq!(two[8].owners(), [Player::III, Player::III]);
        assert_eq!(enumerate_integer_allocations(8).unwrap().count(), 6561);
        assert_eq!(
            enumerate_integer_allocations(13).err(),
            Some(Error::CapExceeded { m: 13, cap: 12 })
        );
    }

    #[test]
    fn column_sum_validation() {
        let mut shares = AllocationMatrix::zeros(1);
        shares[0][0] = rat(1, 2);
        assert!(AllocationMatrix::new(shares).is_err());
    }
}
