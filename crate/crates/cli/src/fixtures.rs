//! Published rows and sequences, starting from size 1.

pub const MAHONIAN: [&[u64]; 6] = [
    &[1],
    &[1, 1],
    &[1, 2, 2, 1],
    &[1, 3, 5, 6, 5, 3, 1],
    &[1, 4, 9, 15, 20, 22, 20, 15, 9, 4, 1],
    &[1, 5, 14, 29, 49, 71, 90, 101, 101, 90, 71, 49, 29, 14, 5, 1],
];

pub const UNSIEVED: [&[u64]; 9] = [
    &[1],
    &[2],
    &[6, 1],
    &[24, 9],
    &[120, 72, 5],
    &[720, 600, 98, 1],
    &[5040, 5400, 1450, 76],
    &[40320, 52920, 20100, 2200, 35],
    &[362880, 564480, 279300, 48750, 2299, 9],
];

pub const FISHBURN: [&[u64]; 9] = [
    &[1],
    &[2],
    &[5, 1],
    &[15, 9],
    &[53, 62, 5],
    &[217, 407, 95, 1],
    &[1014, 2728, 1222, 76],
    &[5335, 19180, 13710, 2060, 35],
    &[31240, 142979, 146754, 39644, 2254, 9],
];

/// A022493, from size 0.
pub const FISHBURN_NUMBERS: [u64; 10] = [1, 1, 2, 5, 15, 53, 217, 1014, 5335, 31240];

/// A179525, from size 1.
pub const PRIMITIVE_ROW_TOTALS: [u64; 7] = [1, 2, 7, 33, 197, 1419, 11966];

/// Rows in the `table` layout used by `triangle --from 1`.
pub fn as_table(rows: &[&[u64]]) -> String {
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(u64::to_string).collect();
            cells.join(" ") + "\n"
        })
        .collect()
}
