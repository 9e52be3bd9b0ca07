//! Subset-product-equals-one solvers: the three strategies, size windows,
//! and the counting-theorem lower bound checked on a concrete instance.
//!
//!     cargo run --example subset_products

use num_bigint::BigUint;

use carmichael::groups::{
    count_subset_solutions, find_subset_product_one, n_exact, theorem_lower_bound, units_mod,
    Strategy,
};

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn main() {
    let m = big(8);
    let elements: Vec<BigUint> = [3u64, 5, 7].iter().map(|&v| big(v)).collect();
    let sol = find_subset_product_one(&elements, &m, Strategy::Exhaustive, None)
        .unwrap()
        .expect("3 * 5 * 7 = 105 = 1 (mod 8)");
    println!("mod 8: chose indices {:?} from [3, 5, 7]", sol.chosen);

    // A bigger instance where meet-in-the-middle shines.
    let m = big(143);
    let units = units_mod(143);
    let elements: Vec<BigUint> = units.iter().rev().take(30).map(|&u| big(u)).collect();
    let sol = find_subset_product_one(&elements, &m, Strategy::MeetInMiddle, Some((2, 6)))
        .unwrap()
        .expect("plenty of solutions among 30 units");
    println!(
        "mod 143: found a size-{} subset with product 1 via meet-in-the-middle",
        sol.chosen.len()
    );
    assert!(sol.reverify());

    // Counting: any r units with r > t > n(L) give at least C(r,t)/C(r,n)
    // product-one subsets of size in [t - n, t].
    let l = 15u64;
    let n_l = n_exact(l, 64).unwrap();
    let all_units: Vec<BigUint> = units_mod(l).iter().map(|&u| big(u)).collect();
    let r = all_units.len() as u64;
    let t = n_l + 2;
    let window = ((t - n_l) as usize, t as usize);
    let count = count_subset_solutions(&all_units, &big(l), Some(window)).unwrap();
    let bound = theorem_lower_bound(r, t, n_l);
    println!(
        "mod 15: n(L) = {n_l}, r = {r}, t = {t}: {} solutions in window {:?} >= bound {:.3}",
        count.count, count.window, bound
    );
    assert!(count.count as f64 >= bound);
}
