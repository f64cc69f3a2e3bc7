//! File formats: schedule JSON, state and spiral CSV, phase-pattern golden files.
//!
//! Every float is written with 17 significant digits (`%.17g`), which round-trips `f64`
//! exactly and keeps output byte-stable.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::Formatter;

use crate::error::Result;
use crate::exchange::{wrap_phase, Amplitudes};
use crate::schedules::theodorus::SpiralPoint;
use crate::schedules::Schedule;
use crate::verification::PhaseRecord;

/// Formats `x` like C's `%.17g`.
pub fn fmt17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    if (-5..17).contains(&exp) {
        let body = if exp >= 0 {
            let split = exp as usize + 1;
            format!("{}.{}", &digits[..split], &digits[split..])
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        };
        let body = body.trim_end_matches('0').trim_end_matches('.');
        format!("{sign}{body}")
    } else {
        let m = format!("{}.{}", &digits[..1], &digits[1..]);
        let m = m.trim_end_matches('0').trim_end_matches('.');
        let esign = if exp < 0 { '-' } else { '+' };
        format!("{sign}{m}e{esign}{:02}", exp.abs())
    }
}

/// Compact JSON with 17-significant-digit floats.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sig17Formatter;

impl Formatter for Sig17Formatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt17(value).as_bytes())
    }
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17Formatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

pub fn write_schedule_json<W: Write>(mut out: W, schedule: &Schedule) -> Result<()> {
    writeln!(out, "{}", to_json_string(schedule)?)?;
    Ok(())
}

/// `index,re,im,magnitude,phase` with phase in (−π, π]; one row per basis index.
pub fn write_state_csv<W: Write, S: Amplitudes>(mut out: W, state: &S) -> Result<()> {
    writeln!(out, "index,re,im,magnitude,phase")?;
    for (i, c) in state.amplitudes().iter().enumerate() {
        let phase = if c.norm_sqr() == 0.0 {
            0.0
        } else {
            wrap_phase(c.arg())
        };
        writeln!(
            out,
            "{i},{},{},{},{}",
            fmt17(c.re),
            fmt17(c.im),
            fmt17(c.norm()),
            fmt17(phase)
        )?;
    }
    Ok(())
}

pub fn write_spiral_csv<W: Write, I>(mut out: W, points: I) -> Result<()>
where
    I: IntoIterator<Item = SpiralPoint>,
{
    writeln!(out, "n,radius,alpha,beta,theta")?;
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{}",
            p.n,
            fmt17(p.radius),
            fmt17(p.alpha),
            fmt17(p.beta),
            fmt17(p.theta)
        )?;
    }
    Ok(())
}

/// One record per line inside a JSON array.
pub fn write_phase_records<W: Write>(mut out: W, records: &[PhaseRecord]) -> Result<()> {
    writeln!(out, "[")?;
    for (i, r) in records.iter().enumerate() {
        let sep = if i + 1 < records.len() { "," } else { "" };
        writeln!(out, "  {}{sep}", to_json_string(r)?)?;
    }
    writeln!(out, "]")?;
    Ok(())
}

pub fn read_phase_records(text: &str) -> Result<Vec<PhaseRecord>> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::SubspaceState;
    use crate::schedules::divide_conquer_schedule;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_PI_4, PI};

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt17(FRAC_PI_4), "0.78539816339744828");
        assert_eq!(fmt17(PI), "3.1415926535897931");
        assert_eq!(fmt17(0.5), "0.5");
        assert_eq!(fmt17(1.0), "1");
        assert_eq!(fmt17(-2.5), "-2.5");
        assert_eq!(fmt17(1e-7), "9.9999999999999995e-08");
        assert_eq!(fmt17(1e20), "1e+20");
        assert_eq!(fmt17(123456.0), "123456");
        assert_eq!(fmt17(0.0001), "0.0001");
        assert_eq!(fmt17(0.0), "0");
    }

    #[test]
    fn fmt17_round_trips() {
        for x in [
            FRAC_PI_4,
            1.0 / 3.0,
            6.02e23,
            -1.5e-300,
            2000.0 - 2.157616330001113,
        ] {
            assert_eq!(fmt17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn schedule_json_shape() {
        let s = divide_conquer_schedule(4).unwrap();
        let mut buf = Vec::new();
        write_schedule_json(&mut buf, &s).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "{\"protocol\":\"divide_conquer\",\"n\":4,\"lambda\":1,\"gates\":[\
             {\"a\":0,\"b\":2,\"t\":0.78539816339744828,\"stage\":0},\
             {\"a\":0,\"b\":1,\"t\":0.78539816339744828,\"stage\":1},\
             {\"a\":2,\"b\":3,\"t\":0.78539816339744828,\"stage\":1}],\
             \"serial_time\":2.3561944901923448,\"parallel_time\":1.5707963267948966}\n"
        );
        assert_eq!(Schedule::from_json(&text).unwrap(), s);
    }

    #[test]
    fn schedule_json_rejects_tampering() {
        let s = divide_conquer_schedule(4).unwrap();
        let text = to_json_string(&s)
            .unwrap()
            .replace("\"serial_time\":2.3561944901923448", "\"serial_time\":2.5");
        assert!(Schedule::from_json(&text).is_err());
        let text = to_json_string(&s).unwrap().replace("\"b\":3", "\"b\":9");
        assert!(Schedule::from_json(&text).is_err());
    }

    #[test]
    fn state_csv() {
        let s = SubspaceState::from_amplitudes(vec![
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, -0.8),
        ])
        .unwrap();
        let mut buf = Vec::new();
        write_state_csv(&mut buf, &s).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "index,re,im,magnitude,phase");
        assert_eq!(lines[1], "0,0.59999999999999998,0,0.59999999999999998,0");
        assert_eq!(
            lines[2],
            "1,0,-0.80000000000000004,0.80000000000000004,-1.5707963267948966"
        );
    }

    #[test]
    fn negative_real_axis_phase_is_plus_pi() {
        let s = SubspaceState::from_amplitudes(vec![Complex64::new(-1.0, -0.0)]).unwrap();
        let mut buf = Vec::new();
        write_state_csv(&mut buf, &s).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .ends_with(",3.1415926535897931\n"));
    }
}
