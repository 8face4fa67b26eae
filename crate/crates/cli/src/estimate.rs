//! Physical length scale of tachyonic collisions for a real particle mass.
//!
//! With zero discriminant and `|E| = m`, positions of tachyonic collisions obey
//! `|x_1| <= 2 G |E|`, where `G` converts mass to length in units with `c = 1`.

use crate::error::ConfigError;

/// Gravitational constant in metres per kilogram (`G / c^2`).
pub const G_METRES_PER_KG: f64 = 7.4e-28;

/// `2 G m` in metres.
pub fn tachyonic_scale(mass_kg: f64, g: f64) -> Result<f64, ConfigError> {
    if !(mass_kg.is_finite() && mass_kg > 0.0) {
        return Err(ConfigError::new("mass", format!("must be positive, got {mass_kg}")));
    }
    if !(g.is_finite() && g > 0.0) {
        return Err(ConfigError::new("g", format!("must be positive, got {g}")));
    }
    Ok(2.0 * g * mass_kg)
}

/// `value` in scientific notation with `digits` significant figures.
pub fn significant(value: f64, digits: usize) -> String {
    format!("{:.*e}", digits.saturating_sub(1), value)
}

/// Printable derivation: formula, inputs, and the result to the precision of `G`.
pub fn report(mass_kg: f64, g: f64) -> Result<String, ConfigError> {
    let length = tachyonic_scale(mass_kg, g)?;
    Ok(format!(
        "length = 2 G m\nG = {g:e} m/kg\nm = {mass_kg:e} kg\n2 * {g:e} * {mass_kg:e} = {} m\n",
        significant(length, 2)
    ))
}
