//! Sign generation for H^⊗n: the four methods and how many O(n) descents
//! each one needs.

use sparse_qsim::rh::{
    block_cost, optimal_block_size, quadrant_sign, sign_row_block, sign_row_logarithm, SignCounter,
    SignMethod,
};

fn main() {
    let mut counter = SignCounter::default();
    println!(
        "sign(2, 7) at n = 3: {}",
        quadrant_sign(2, 7, 3, &mut counter).unwrap()
    );

    let n = 5;
    for b in [1, 2, 4, 8, 16] {
        let mut c = SignCounter::default();
        let row = sign_row_block(3, n, b, &mut c).unwrap();
        println!(
            "n = 5, row 3, block {b:>2}: {} descents (f = {})  {:?}",
            c.count,
            block_cost(n, b),
            row
        );
    }
    let mut c = SignCounter::default();
    let row = sign_row_logarithm(3, n, &mut c).unwrap();
    println!(
        "n = 5, row 3, logarithm: {} descents           {:?}",
        c.count, row
    );

    println!(
        "\n n  {:>14} {:>14} {:>14} {:>14}  best block",
        "nonopt", "quarter", "block", "logarithm"
    );
    for n in [4u32, 8, 12, 16, 20] {
        let calls = |m: SignMethod| m.expected_sign_calls(n).unwrap();
        println!(
            "{n:>2}  {:>14} {:>14} {:>14} {:>14}  {}",
            calls(SignMethod::NonOptimized),
            calls(SignMethod::Quarter),
            calls(SignMethod::Block(None)),
            calls(SignMethod::Logarithm),
            optimal_block_size(n).unwrap()
        );
    }
}
