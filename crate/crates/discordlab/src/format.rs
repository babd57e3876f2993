//! CSV emission. Reals are written with 17 significant digits in scientific
//! notation so output is identical across platforms and locales.

use discordlab_core::{ChenClass, SurveyReport, TrajectoryPoint};

pub const TRAJECTORY_HEADER: &str = "nu,discord,classical,mutual_info,theta_star,basis_label";
pub const SCAN_HEADER: &str = "nu,theta,objective";
pub const SURVEY_HEADER: &str = "seed,n,n_sudden_capable,n_sigma_z,n_sigma_x,n_both,n_neither";
pub const CLASSIFY_HEADER: &str =
    "nu,p00,p11,p22,p33,r12,r03,label,z_lhs,z_rhs,x_lhs,x_rhs,r03_flipped,sudden_capable,theta_star,classical";

pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn trajectory_csv(points: &[TrajectoryPoint]) -> String {
    let mut out = String::with_capacity(100 * (points.len() + 1));
    out.push_str(TRAJECTORY_HEADER);
    out.push('\n');
    for p in points {
        let row = [real(p.nu), real(p.discord), real(p.classical), real(p.mutual_info), real(p.theta_star)];
        out.push_str(&row.join(","));
        out.push(',');
        out.push_str(p.basis_label.as_str());
        out.push('\n');
    }
    out
}

pub fn scan_csv(blocks: &[(f64, Vec<(f64, f64)>)]) -> String {
    let mut out = String::from(SCAN_HEADER);
    out.push('\n');
    for (nu, curve) in blocks {
        for &(theta, value) in curve {
            out.push_str(&format!("{},{},{}\n", real(*nu), real(theta), real(value)));
        }
    }
    out
}

pub fn survey_csv(r: &SurveyReport) -> String {
    format!(
        "{SURVEY_HEADER}\n{},{},{},{},{},{},{}\n",
        r.seed, r.n, r.n_sudden_capable, r.n_sigma_z, r.n_sigma_x, r.n_both, r.n_neither
    )
}

/// One classification row; see [`CLASSIFY_HEADER`].
pub struct ClassifyRow {
    pub nu: f64,
    pub params: [f64; 6],
    pub class: ChenClass,
    pub sudden_capable: bool,
    pub theta_star: f64,
    pub classical: f64,
}

pub fn classify_csv(rows: &[ClassifyRow]) -> String {
    let mut out = String::from(CLASSIFY_HEADER);
    out.push('\n');
    for r in rows {
        let mut fields = vec![real(r.nu)];
        fields.extend(r.params.iter().map(|&x| real(x)));
        fields.push(r.class.label.as_str().to_string());
        fields.extend([r.class.z_lhs, r.class.z_rhs, r.class.x_lhs, r.class.x_rhs].map(real));
        fields.push(r.class.r03_flipped.to_string());
        fields.push(r.sudden_capable.to_string());
        fields.push(real(r.theta_star));
        fields.push(real(r.classical));
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}
