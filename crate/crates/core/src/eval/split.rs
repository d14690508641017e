use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::EvalError;

/// Shuffles with a seeded ChaCha8 generator and cuts into train, valid and
/// test. Valid and test get `floor(n * ratio)` items; the remainder goes to
/// train.
pub fn split_dataset<T>(items: Vec<T>, ratios: [f64; 3], seed: u64) -> Result<(Vec<T>, Vec<T>, Vec<T>), EvalError> {
    if items.is_empty() {
        return Err(EvalError::Empty);
    }
    if ratios.iter().any(|r| !(0.0..=1.0).contains(r)) || (ratios.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(EvalError::BadRatios(ratios));
    }
    let n = items.len();
    // The epsilon absorbs representation error such as 0.29 * 100 = 28.999...
    let cut = |r: f64| ((n as f64 * r) + 1e-9).floor() as usize;
    let n_valid = cut(ratios[1]);
    let n_test = cut(ratios[2]);
    let n_train = n - n_valid - n_test;
    let mut items = items;
    items.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let test = items.split_off(n_train + n_valid);
    let valid = items.split_off(n_train);
    Ok((items, valid, test))
}
