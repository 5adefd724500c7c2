use crate::error::{Error, Result};

/// Index of the largest value; ties go to the lowest index.
pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Writes the ε-constrained delta `ε + (1 − |A|ε)·δ_best` into `row`.
pub(crate) fn write_decision(row: &mut [f64], best: usize, epsilon: f64) {
    let k = row.len() as f64;
    row.fill(epsilon);
    row[best] = epsilon + (1.0 - k * epsilon);
}

/// Best decision at one information set from its action utilities.
///
/// Returns the distribution (a delta on the argmax, or the ε-constrained
/// delta when `epsilon > 0`) and the chosen index. Ties pick the lowest
/// index.
pub fn best_decision(utilities: &[f64], epsilon: f64) -> Result<(Vec<f64>, usize)> {
    if utilities.is_empty() {
        return Err(Error::EmptyUtilities);
    }
    let k = utilities.len() as f64;
    if !(epsilon >= 0.0 && epsilon * k <= 1.0) {
        return Err(Error::Config(format!(
            "epsilon {epsilon} outside [0, 1/{}]",
            utilities.len()
        )));
    }
    let best = argmax(utilities);
    let mut row = vec![0.0; utilities.len()];
    write_decision(&mut row, best, epsilon);
    Ok((row, best))
}
