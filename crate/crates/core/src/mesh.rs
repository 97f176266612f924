//! Point clouds of orbits projected into the unit ball.
//!
//! The half `x4 ≥ 0` of the sphere is identified with the closed unit ball by
//! dropping the last Bell coordinate, `u = (x1, x2, x3)`.

use std::f64::consts::{FRAC_PI_4, TAU};
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{check_distance, OrbitSheet, Sheet, DOMAIN_SLACK};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeshPoint {
    pub u: [f64; 3],
    #[serde(skip)]
    pub d: f64,
    pub sheet: OrbitSheet,
}

impl MeshPoint {
    /// Fourth Bell coordinate recovered from the ball point.
    pub fn x4(&self) -> f64 {
        (1.0 - self.norm_sq()).max(0.0).sqrt()
    }

    pub fn norm_sq(&self) -> f64 {
        self.u.iter().map(|c| c * c).sum()
    }

    /// Residual of the `sin²d` quadric defining the point's sheet.
    pub fn quadric_residual(&self) -> f64 {
        let (sd, cd) = self.d.sin_cos();
        let r12 = self.u[0] * self.u[0] + self.u[1] * self.u[1];
        match self.sheet {
            OrbitSheet::V34 | OrbitSheet::Both => r12 - sd * sd,
            OrbitSheet::V12 => r12 - cd * cd,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitMesh {
    pub d: f64,
    pub points: Vec<MeshPoint>,
}

fn push_half(points: &mut Vec<MeshPoint>, x: [f64; 4], d: f64, sheet: OrbitSheet) {
    if x[3] >= 0.0 {
        points.push(MeshPoint {
            u: [x[0], x[1], x[2]],
            d,
            sheet,
        });
    }
}

fn torus_sheet(
    points: &mut Vec<MeshPoint>,
    d: f64,
    n_a: usize,
    n_b: usize,
    sheet: Sheet,
    label: OrbitSheet,
) {
    let (sd, cd) = d.sin_cos();
    for i in 0..n_a {
        let (sa, ca) = (TAU * i as f64 / n_a as f64).sin_cos();
        for j in 0..n_b {
            let (sb, cb) = (TAU * j as f64 / n_b as f64).sin_cos();
            let x = match sheet {
                Sheet::V34 => [sd * ca, sd * sa, cd * cb, cd * sb],
                Sheet::V12 => [cd * cb, cd * sb, sd * ca, sd * sa],
            };
            push_half(points, x, d, label);
        }
    }
}

/// Samples the orbit at distance `d` on an `n_a × n_b` angular grid and keeps
/// the points with `x4 ≥ 0`.
///
/// At `d = 0` each circle is sampled with `n_b` points: the circle through
/// `v1, v2` lies in `x4 = 0` and is kept whole, the one through `v3, v4` is cut
/// in half. At `d = π/4` the single product torus is emitted with sheet `BOTH`.
pub fn orbit_mesh(d: f64, n_a: usize, n_b: usize) -> Result<OrbitMesh> {
    let d = check_distance(d)?;
    if n_a < 2 || n_b < 2 {
        return Err(Error::Domain {
            what: "grid size",
            value: n_a.min(n_b) as f64,
            domain: "at least 2",
        });
    }
    let mut points = Vec::new();
    if d <= DOMAIN_SLACK {
        let d = 0.0;
        for j in 0..n_b {
            let (sb, cb) = (TAU * j as f64 / n_b as f64).sin_cos();
            push_half(&mut points, [0.0, 0.0, cb, sb], d, OrbitSheet::V34);
        }
        for j in 0..n_b {
            let (sb, cb) = (TAU * j as f64 / n_b as f64).sin_cos();
            push_half(&mut points, [cb, sb, 0.0, 0.0], d, OrbitSheet::V12);
        }
        return Ok(OrbitMesh { d, points });
    }
    if (d - FRAC_PI_4).abs() <= DOMAIN_SLACK {
        let d = FRAC_PI_4;
        torus_sheet(&mut points, d, n_a, n_b, Sheet::V34, OrbitSheet::Both);
        return Ok(OrbitMesh { d, points });
    }
    torus_sheet(&mut points, d, n_a, n_b, Sheet::V34, OrbitSheet::V34);
    torus_sheet(&mut points, d, n_a, n_b, Sheet::V12, OrbitSheet::V12);
    Ok(OrbitMesh { d, points })
}

#[derive(Serialize)]
struct CsvRow<'a> {
    u1: f64,
    u2: f64,
    u3: f64,
    d: f64,
    sheet: &'a str,
}

impl OrbitMesh {
    /// CSV with header `u1,u2,u3,d,sheet`; numbers at round-trip precision.
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for p in &self.points {
            w.serialize(CsvRow {
                u1: p.u[0],
                u2: p.u[1],
                u3: p.u[2],
                d: p.d,
                sheet: p.sheet.as_str(),
            })?;
        }
        if self.points.is_empty() {
            w.write_record(["u1", "u2", "u3", "d", "sheet"])?;
        }
        w.flush()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("mesh serializes")
    }
}
