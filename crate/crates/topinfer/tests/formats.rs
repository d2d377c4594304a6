use std::f64::consts::PI;
use std::io::BufReader;

use topinfer::formats::{read_complex, read_sample_csv, write_complex, write_sample_csv};
use topinfer_core::complex::{betti_numbers, build_rips, DEFAULT_BUDGET};
use topinfer_core::{Metric, SampleSource};

const OCTAGON_CSV: &str = include_str!("data/octagon.csv");
const OCTAGON_COMPLEX: &str = include_str!("data/octagon.complex");

#[test]
fn octagon_rips_matches_golden_file() {
    let s = read_sample_csv(OCTAGON_CSV.as_bytes()).unwrap();
    assert_eq!(s.len(), 8);
    assert_eq!(s.source, SampleSource::OnManifold);
    let c = build_rips(&s, 2.0 * (PI / 8.0).sin() + 0.01, 2, Metric::Ambient, DEFAULT_BUDGET).unwrap();
    let mut out = Vec::new();
    write_complex(&c, &mut out).unwrap();
    assert_eq!(String::from_utf8(out).unwrap(), OCTAGON_COMPLEX);
    assert_eq!(betti_numbers(&c).to_string(), "1,1,0");
}

#[test]
fn golden_complex_reads_back() {
    let c = read_complex(BufReader::new(OCTAGON_COMPLEX.as_bytes())).unwrap();
    assert_eq!(c.counts(), [8, 8, 0]);
    let mut out = Vec::new();
    write_complex(&c, &mut out).unwrap();
    assert_eq!(out, OCTAGON_COMPLEX.as_bytes());
}

#[test]
fn sample_csv_is_stable() {
    let s = read_sample_csv(OCTAGON_CSV.as_bytes()).unwrap();
    let mut out = Vec::new();
    write_sample_csv(&s, &mut out).unwrap();
    assert_eq!(String::from_utf8(out).unwrap(), OCTAGON_CSV);
}
