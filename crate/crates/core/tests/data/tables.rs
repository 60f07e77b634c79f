//! Published count tables for the square and cube root of 2, as printed
//! (counts exact, ratio cells with the number of places shown).

/// `(iter, n0, n1, n0/n1)` for m = 2, N = 2, seed "0".
pub const SQRT2_ROWS: [(usize, u64, u64, &str); 16] = [
    (1, 1, 1, "1"),
    (2, 3, 2, "1.5000000000000000"),
    (3, 7, 5, "1.4000000000000000"),
    (4, 17, 12, "1.4166666666666667"),
    (5, 41, 29, "1.41379310344828"),
    (6, 99, 70, "1.41428571428571"),
    (7, 239, 169, "1.41420118343195"),
    (8, 577, 408, "1.41421568627451"),
    (9, 1393, 985, "1.41421319796954"),
    (10, 3363, 2378, "1.41421362489487"),
    (11, 8119, 5741, "1.41421355164605"),
    (12, 19601, 13860, "1.41421356421356"),
    (13, 47321, 33461, "1.41421356205732"),
    (14, 114243, 80782, "1.41421356242727"),
    (15, 275807, 195025, "1.41421356236380"),
    (16, 665857, 470832, "1.41421356237469"),
];

/// `(iter, n0, n1, n2, n0/n1, n1/n2)` for m = 3, N = 2, seed "0".
pub const CBRT2_ROWS: [(usize, u64, u64, u64, &str, &str); 15] = [
    (1, 1, 1, 0, "1", "infinity"),
    (2, 1, 2, 1, "0.5000000000000000", "2"),
    (3, 3, 3, 3, "1", "1"),
    (4, 9, 6, 6, "1.5000000000000000", "1"),
    (5, 21, 15, 12, "1.4000000000000000", "1.2500000000000000"),
    (6, 45, 36, 27, "1.2500000000000000", "1.3333333333333333"),
    (7, 99, 81, 63, "1.2222222222222222", "1.28571428571429"),
    (8, 225, 180, 144, "1.2500000000000000", "1.2500000000000000"),
    (9, 513, 405, 324, "1.2666666666666667", "1.2500000000000000"),
    (10, 1161, 918, 729, "1.26470588235294", "1.25925925925926"),
    (11, 2619, 2079, 1647, "1.25974025974026", "1.26229508196721"),
    (12, 5913, 4698, 3726, "1.25862068965517", "1.26086956521739"),
    (13, 13365, 10611, 8424, "1.25954198473282", "1.25961538461538"),
    (14, 30213, 23976, 19035, "1.26013513513514", "1.25957446808511"),
    (15, 68283, 54189, 43011, "1.26008968609865", "1.25988700564972"),
];

/// Word lists `W_0 .. W_4` from seed "0".
pub const SQRT2_WORDS: [&str; 5] = ["0", "01", "01100", "011001000101", "01100100010110001010110001100"];
pub const CBRT2_WORDS: [&str; 5] = ["0", "01", "0112", "011212200", "011212200122002000101"];

/// Whether `rendered` and `printed` (same number of places) differ by at
/// most one unit in the last place. Non-numeric cells must match exactly.
pub fn within_one_ulp(rendered: &str, printed: &str) -> bool {
    let places = |s: &str| s.split_once('.').map_or(0, |(_, f)| f.len());
    let as_int = |s: &str| s.replace('.', "").parse::<i128>().ok();
    match (as_int(rendered), as_int(printed)) {
        (Some(a), Some(b)) => places(rendered) == places(printed) && (a - b).abs() <= 1,
        _ => rendered == printed,
    }
}

/// Fractional places shown in a printed cell.
pub fn printed_places(cell: &str) -> usize {
    cell.split_once('.').map_or(0, |(_, f)| f.len())
}
