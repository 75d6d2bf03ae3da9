use crate::logdomain::{group_thousands, LogQuantity};

pub const AGE_OF_UNIVERSE_YEARS: f64 = 1.4e10;
/// log10 of the evaporation time of the largest black holes, in years.
pub const BLACK_HOLE_ERA_LOG10_YEARS: f64 = 106.0;

const DAYS_PER_YEAR: f64 = 365.0;
const SECONDS_PER_DAY: f64 = 86_400.0;

fn plural(value: u64, unit: &str) -> String {
    if value == 1 {
        format!("1 {unit}")
    } else {
        format!("{value} {unit}s")
    }
}

/// Human-readable duration in the largest unit whose leading value is at
/// least one, with milestone notes past the age of the universe and the
/// black-hole era.
pub fn format_duration(years: LogQuantity) -> String {
    if years.is_zero() {
        return "0 seconds".to_owned();
    }
    let log10 = years.log10();
    let mut text = if log10 < 3.0 {
        small_duration(years.to_f64())
    } else if log10 < 9.0 {
        format!("{} years", group_thousands(years.to_f64().round() as i64))
    } else {
        format!("{} years", years.format(2))
    };
    if log10 > BLACK_HOLE_ERA_LOG10_YEARS {
        text.push_str(" (exceeds black-hole evaporation era)");
    } else if log10 > AGE_OF_UNIVERSE_YEARS.log10() {
        text.push_str(" (exceeds age of universe)");
    }
    text
}

fn small_duration(years: f64) -> String {
    let seconds = years * DAYS_PER_YEAR * SECONDS_PER_DAY;
    let tenths = |v: f64| (v * 10.0).round() / 10.0;
    if tenths(seconds) < 60.0 {
        return format!("{:.1} seconds", tenths(seconds));
    }
    let minutes = seconds / 60.0;
    if tenths(minutes) < 60.0 {
        return format!("{:.1} minutes", tenths(minutes));
    }
    let total_minutes = minutes.round() as u64;
    if total_minutes < 24 * 60 {
        let (h, m) = (total_minutes / 60, total_minutes % 60);
        return if m == 0 {
            plural(h, "hour")
        } else {
            format!("{} and {}", plural(h, "hour"), plural(m, "minute"))
        };
    }
    let days = seconds / SECONDS_PER_DAY;
    if tenths(days) < DAYS_PER_YEAR {
        return format!("{:.1} days", tenths(days));
    }
    format!("{:.1} years", tenths(years))
}
