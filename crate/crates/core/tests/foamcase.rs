use std::path::Path;

use hull_bo::campaign::{scenario_label, scenario_matrix};
use hull_bo::drag::{FluidProps, Scenario};
use hull_bo::foamcase::{parse_force_log, render_case, turbulence_ic, write_case, C_MU};
use hull_bo::geometry::{build_profile, check_watertight, DesignVector};

fn golden_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden"))
}

fn case_files(s: &Scenario<f64>) -> Vec<(String, Vec<u8>)> {
    let p = build_profile(&DesignVector::uniform(0.1, 0.4)).unwrap();
    let ic = turbulence_ic(s.velocity, s.turbulence_intensity, 0.07, C_MU).unwrap();
    render_case(&p, s, &FluidProps::default(), &ic)
        .unwrap()
        .into_iter()
        .map(|(p, b)| (p.to_string_lossy().into_owned(), b))
        .collect()
}

#[test]
fn k_and_omega_match_golden_files() {
    for s in scenario_matrix() {
        let files = case_files(&s);
        for name in ["k", "omega"] {
            let got = &files
                .iter()
                .find(|(p, _)| p == &format!("0/{name}"))
                .unwrap()
                .1;
            let path = golden_dir().join(scenario_label(&s)).join(name);
            let want = std::fs::read(&path).unwrap();
            assert!(
                got == &want,
                "{} differs:\n{}",
                path.display(),
                String::from_utf8_lossy(got)
            );
        }
    }
}

#[test]
fn written_case_is_idempotent_and_watertight() {
    let s = Scenario::new(10.0, 20.0);
    let p = build_profile(&DesignVector::new([0.05, 0.1, 0.15, 0.15, 0.1, 0.05], 0.4)).unwrap();
    let ic = turbulence_ic(10.0, 20.0, 0.07, C_MU).unwrap();
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let written = write_case(a.path(), &p, &s, &FluidProps::default(), &ic).unwrap();
    write_case(b.path(), &p, &s, &FluidProps::default(), &ic).unwrap();
    write_case(b.path(), &p, &s, &FluidProps::default(), &ic).unwrap();
    assert_eq!(written.len(), 8);
    for path in &written {
        let rel = path.strip_prefix(a.path()).unwrap();
        assert_eq!(
            std::fs::read(path).unwrap(),
            std::fs::read(b.path().join(rel)).unwrap()
        );
    }
    let k = std::fs::read_to_string(a.path().join("0/k")).unwrap();
    assert!(k.contains("uniform 6;"));
    let stl = std::fs::read(a.path().join("constant/triSurface/hull.stl")).unwrap();
    check_watertight(&stl).unwrap();
    for dict in [
        "system/controlDict",
        "system/fvSchemes",
        "system/fvSolution",
        "constant/transportProperties",
    ] {
        let text = std::fs::read_to_string(a.path().join(dict)).unwrap();
        assert!(
            text.contains("FoamFile")
                && text.contains("version     2.0;")
                && text.contains("format      ascii;")
        );
    }
}

#[test]
fn unwritable_directory_is_an_error() {
    let tmp = tempfile::tempdir().unwrap();
    let blocker = tmp.path().join("file");
    std::fs::write(&blocker, b"x").unwrap();
    let s = Scenario::new(5.0, 5.0);
    let p = build_profile(&DesignVector::uniform(0.1, 0.4)).unwrap();
    let ic = turbulence_ic(5.0, 5.0, 0.07, C_MU).unwrap();
    assert!(write_case(&blocker.join("case"), &p, &s, &FluidProps::default(), &ic).is_err());
}

#[test]
fn force_log_examples() {
    let constant: String = (1..=10).map(|t| format!("{t} 3.5 0 0\n")).collect();
    assert_eq!(parse_force_log(&constant).unwrap().final_drag, 3.5);

    let mut text = String::from("# Forces\n# Time Fx Fy Fz\n");
    for (t, fx) in [10, 10, 10, 10, 2, 2, 2, 2, 2, 2].iter().enumerate() {
        text.push_str(&format!("{} {fx} 0.1 0.2\n", t + 1));
    }
    let h = parse_force_log(&text).unwrap();
    assert_eq!(h.samples.len(), 10);
    assert_eq!(h.final_drag, 2.0);

    assert!(parse_force_log("# only\n# comments\n").is_err());
}
