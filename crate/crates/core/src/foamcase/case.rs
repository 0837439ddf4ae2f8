use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::drag::{FluidProps, Scenario};
use crate::geometry::{export_stl, GeometryError, HullProfile, MAX_RADIUS};
use crate::numfmt::fmt_sig;

use super::ic::TurbulenceIC;

/// Surface mesh resolution of the emitted hull STL.
pub const STL_AXIAL: usize = 200;
pub const STL_CIRC: usize = 64;

/// Relative path of the force log the emitted case produces.
pub const FORCE_LOG: &str = "postProcessing/forces/0/force.dat";

#[derive(Debug, thiserror::Error)]
pub enum CaseError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn num(v: f64) -> String {
    fmt_sig(v, 9)
}

fn header(class: &str, location: Option<&str>, object: &str) -> String {
    let mut s = String::new();
    s.push_str(
        "/*--------------------------------*- C++ -*----------------------------------*\\\n",
    );
    s.push_str("  Generated by hull-bo\n");
    s.push_str(
        "\\*---------------------------------------------------------------------------*/\n",
    );
    s.push_str("FoamFile\n{\n");
    s.push_str("    version     2.0;\n");
    s.push_str("    format      ascii;\n");
    let _ = writeln!(s, "    class       {class};");
    if let Some(loc) = location {
        let _ = writeln!(s, "    location    \"{loc}\";");
    }
    let _ = writeln!(s, "    object      {object};");
    s.push_str("}\n");
    s.push_str("// * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * //\n\n");
    s
}

const FOOTER: &str =
    "\n// ************************************************************************* //\n";

fn velocity_file(s: &Scenario<f64>) -> String {
    let u = format!("uniform ({} 0 0)", num(s.velocity));
    let mut f = header("volVectorField", Some("0"), "U");
    let _ = write!(
        f,
        "dimensions      [0 1 -1 0 0 0 0];\n\n\
         internalField   {u};\n\n\
         boundaryField\n{{\n\
         \x20   inlet\n    {{\n        type            fixedValue;\n        value           {u};\n    }}\n\
         \x20   outlet\n    {{\n        type            inletOutlet;\n        inletValue      uniform (0 0 0);\n        value           {u};\n    }}\n\
         \x20   farfield\n    {{\n        type            slip;\n    }}\n\
         \x20   hull\n    {{\n        type            noSlip;\n    }}\n}}\n"
    );
    f.push_str(FOOTER);
    f
}

fn scalar_field(object: &str, dims: &str, value: f64, wall: &str) -> String {
    let v = format!("uniform {};", num(value));
    let mut f = header("volScalarField", Some("0"), object);
    let _ = write!(
        f,
        "dimensions      {dims};\n\n\
         internalField   {v}\n\n\
         boundaryField\n{{\n\
         \x20   inlet\n    {{\n        type            fixedValue;\n        value           {v}\n    }}\n\
         \x20   outlet\n    {{\n        type            inletOutlet;\n        inletValue      {v}\n        value           {v}\n    }}\n\
         \x20   farfield\n    {{\n        type            slip;\n    }}\n\
         \x20   hull\n    {{\n        type            {wall};\n        value           {v}\n    }}\n}}\n"
    );
    f.push_str(FOOTER);
    f
}

fn transport_properties(fl: &FluidProps<f64>) -> String {
    let mut f = header("dictionary", Some("constant"), "transportProperties");
    let _ = write!(
        f,
        "transportModel  Newtonian;\n\n\
         nu              [0 2 -1 0 0 0 0] {};\n\n\
         // reference density for force output\n\
         rhoInf          {};\n",
        num(fl.kinematic_viscosity),
        num(fl.density)
    );
    f.push_str(FOOTER);
    f
}

fn control_dict(s: &Scenario<f64>, fl: &FluidProps<f64>) -> String {
    let a_ref = std::f64::consts::PI * MAX_RADIUS * MAX_RADIUS;
    let mut f = header("dictionary", Some("system"), "controlDict");
    let _ = write!(
        f,
        "application     simpleFoam;\n\n\
         startFrom       startTime;\n\
         startTime       0;\n\
         stopAt          endTime;\n\
         // iteration budget: set for the mesh in use\n\
         endTime         2000;\n\
         deltaT          1;\n\
         writeControl    timeStep;\n\
         writeInterval   500;\n\
         purgeWrite      0;\n\
         writeFormat     ascii;\n\
         writePrecision  9;\n\
         timeFormat      general;\n\
         runTimeModifiable true;\n\n\
         functions\n{{\n\
         \x20   forces\n    {{\n\
         \x20       type            forces;\n\
         \x20       libs            (\"libforces.so\");\n\
         \x20       writeControl    timeStep;\n\
         \x20       writeInterval   1;\n\
         \x20       patches         (hull);\n\
         \x20       rho             rhoInf;\n\
         \x20       rhoInf          {rho};\n\
         \x20       CofR            (0 0 0);\n\
         \x20   }}\n\
         \x20   forceCoeffs\n    {{\n\
         \x20       type            forceCoeffs;\n\
         \x20       libs            (\"libforces.so\");\n\
         \x20       writeControl    timeStep;\n\
         \x20       writeInterval   1;\n\
         \x20       patches         (hull);\n\
         \x20       rho             rhoInf;\n\
         \x20       rhoInf          {rho};\n\
         \x20       CofR            (0 0 0);\n\
         \x20       liftDir         (0 1 0);\n\
         \x20       dragDir         (1 0 0);\n\
         \x20       pitchAxis       (0 0 1);\n\
         \x20       magUInf         {u};\n\
         \x20       lRef            1;\n\
         \x20       Aref            {a_ref};\n\
         \x20   }}\n}}\n",
        rho = num(fl.density),
        u = num(s.velocity),
        a_ref = num(a_ref),
    );
    f.push_str(FOOTER);
    f
}

fn fv_schemes() -> String {
    let mut f = header("dictionary", Some("system"), "fvSchemes");
    f.push_str(
        "ddtSchemes\n{\n    default         steadyState;\n}\n\n\
         gradSchemes\n{\n    default         Gauss linear;\n}\n\n\
         divSchemes\n{\n    default         none;\n\
         \x20   div(phi,U)      bounded Gauss linearUpwind grad(U);\n\
         \x20   div(phi,k)      bounded Gauss upwind;\n\
         \x20   div(phi,omega)  bounded Gauss upwind;\n\
         \x20   div((nuEff*dev2(T(grad(U))))) Gauss linear;\n}\n\n\
         laplacianSchemes\n{\n    default         Gauss linear corrected;\n}\n\n\
         interpolationSchemes\n{\n    default         linear;\n}\n\n\
         snGradSchemes\n{\n    default         corrected;\n}\n\n\
         wallDist\n{\n    method          meshWave;\n}\n",
    );
    f.push_str(FOOTER);
    f
}

fn fv_solution() -> String {
    let mut f = header("dictionary", Some("system"), "fvSolution");
    f.push_str(
        "solvers\n{\n\
         \x20   p\n    {\n        solver          GAMG;\n        smoother        GaussSeidel;\n        tolerance       1e-06;\n        relTol          0.1;\n    }\n\
         \x20   \"(U|k|omega)\"\n    {\n        solver          smoothSolver;\n        smoother        symGaussSeidel;\n        tolerance       1e-06;\n        relTol          0.1;\n    }\n}\n\n\
         SIMPLE\n{\n\
         \x20   nNonOrthogonalCorrectors 0;\n\
         \x20   consistent      yes;\n\
         \x20   // residualControl: convergence criteria depend on the mesh; add here\n}\n\n\
         relaxationFactors\n{\n    equations\n    {\n        U               0.9;\n        \".*\"            0.7;\n    }\n}\n",
    );
    f.push_str(FOOTER);
    f
}

/// Renders every file of the case as `(relative path, contents)`, in a fixed order.
pub fn render_case(
    profile: &HullProfile<f64>,
    s: &Scenario<f64>,
    fl: &FluidProps<f64>,
    ic: &TurbulenceIC<f64>,
) -> Result<Vec<(PathBuf, Vec<u8>)>, CaseError> {
    let text = |p: &str, body: String| (PathBuf::from(p), body.into_bytes());
    Ok(vec![
        text("0/U", velocity_file(s)),
        text(
            "0/k",
            scalar_field("k", "[0 2 -2 0 0 0 0]", ic.k, "kqRWallFunction"),
        ),
        text(
            "0/omega",
            scalar_field("omega", "[0 0 -1 0 0 0 0]", ic.omega, "omegaWallFunction"),
        ),
        text("constant/transportProperties", transport_properties(fl)),
        text("system/controlDict", control_dict(s, fl)),
        text("system/fvSchemes", fv_schemes()),
        text("system/fvSolution", fv_solution()),
        (
            PathBuf::from("constant/triSurface/hull.stl"),
            export_stl(profile, STL_AXIAL, STL_CIRC)?,
        ),
    ])
}

/// Writes the case tree under `dir`, returning the written paths. Rewrites
/// identical bytes for identical inputs.
pub fn write_case(
    dir: &Path,
    profile: &HullProfile<f64>,
    s: &Scenario<f64>,
    fl: &FluidProps<f64>,
    ic: &TurbulenceIC<f64>,
) -> Result<Vec<PathBuf>, CaseError> {
    let files = render_case(profile, s, fl, ic)?;
    let mut written = Vec::with_capacity(files.len());
    for (rel, bytes) in files {
        let path = dir.join(rel);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent).map_err(|source| CaseError::Io {
                path: parent.to_path_buf(),
                source,
            })?;
        }
        std::fs::write(&path, bytes).map_err(|source| CaseError::Io {
            path: path.clone(),
            source,
        })?;
        written.push(path);
    }
    Ok(written)
}
