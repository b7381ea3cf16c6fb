//! C ABI over the crowdsim engine.
//!
//! Scenes and results are opaque handles released with their `_free`
//! function. Every fallible call returns a [`CsStatus`]; on failure the
//! message is available from [`cs_last_error`] on the same thread. Strings
//! returned through out-parameters are owned by the caller and must be
//! released with [`cs_string_free`].

use crowdsim::analytics::{export_trajectories, ResultBundle};
use crowdsim::engine::{SimError, Simulation, SimulationConfig};
use crowdsim::scene::{parse_scene, serialize_scene, validate_scene, Scene, SceneLimits};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidScene = 4,
    ConfigError = 5,
    SimulationError = 6,
    Panic = 7,
}

/// Parsed scene.
pub struct CsScene(Scene);

/// Finished run: result, density grid and summary.
pub struct CsResult(ResultBundle);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CsSummary {
    pub simulation_time_s: f64,
    pub agents_total: u32,
    pub agents_arrived: u32,
    pub distance_avg: f64,
    pub distance_max: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg.into()));
}

fn to_c_string(s: String) -> *mut c_char {
    // Interior NULs cannot occur in JSON or CSV output; strip defensively.
    CString::new(s.replace('\0', ""))
        .expect("NULs removed")
        .into_raw()
}

fn guard(f: impl FnOnce() -> Result<(), (CsStatus, String)>) -> CsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CsStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, (CsStatus, String)> {
    if p.is_null() {
        return Err((CsStatus::NullArgument, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (CsStatus::InvalidUtf8, format!("{name}: {e}")))
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &str) -> Result<&'a T, (CsStatus, String)> {
    p.as_ref()
        .ok_or_else(|| (CsStatus::NullArgument, format!("{name} is null")))
}

fn check_out<T>(p: *mut T, name: &str) -> Result<(), (CsStatus, String)> {
    if p.is_null() {
        Err((CsStatus::NullArgument, format!("{name} is null")))
    } else {
        Ok(())
    }
}

/// Library version, static string.
#[no_mangle]
pub extern "C" fn cs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. Caller frees.
#[no_mangle]
pub extern "C" fn cs_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        Some(m) => to_c_string(m.clone()),
        None => ptr::null_mut(),
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a scene document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cs_scene_parse(json: *const c_char, out: *mut *mut CsScene) -> CsStatus {
    guard(|| {
        check_out(out, "out")?;
        let text = str_arg(json, "json")?;
        let scene = parse_scene(text).map_err(|e| (CsStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(CsScene(scene)));
        Ok(())
    })
}

/// # Safety
/// `scene` must be NULL or a handle from [`cs_scene_parse`], freed once.
#[no_mangle]
pub unsafe extern "C" fn cs_scene_free(scene: *mut CsScene) {
    if !scene.is_null() {
        drop(Box::from_raw(scene));
    }
}

/// Canonical scene JSON.
///
/// # Safety
/// `scene` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cs_scene_to_json(
    scene: *const CsScene,
    out: *mut *mut c_char,
) -> CsStatus {
    guard(|| {
        check_out(out, "out")?;
        let scene = ref_arg(scene, "scene")?;
        *out = to_c_string(serialize_scene(&scene.0));
        Ok(())
    })
}

/// Total agents over all spawners; 0 for NULL, saturating at `UINT32_MAX`.
///
/// # Safety
/// `scene` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_scene_agent_count(scene: *const CsScene) -> u32 {
    scene
        .as_ref()
        .map_or(0, |s| u32::try_from(s.0.total_agents()).unwrap_or(u32::MAX))
}

/// Validates against the default limits. Writes the report as JSON and
/// whether the scene can be simulated. Returns Ok even for invalid scenes.
///
/// # Safety
/// `scene` must be a live handle; `report_json` and `runnable` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_scene_validate(
    scene: *const CsScene,
    report_json: *mut *mut c_char,
    runnable: *mut bool,
) -> CsStatus {
    guard(|| {
        check_out(report_json, "report_json")?;
        check_out(runnable, "runnable")?;
        let scene = ref_arg(scene, "scene")?;
        let report = validate_scene(&scene.0, &SceneLimits::default());
        *runnable = report.is_runnable();
        *report_json = to_c_string(serde_json::to_string(&report).expect("serializable"));
        Ok(())
    })
}

/// Runs a simulation. `config_json` may be NULL for defaults, or a JSON
/// object overriding individual fields (e.g. `{"seed": 7}`).
///
/// # Safety
/// `scene` must be a live handle; `config_json` NULL or NUL-terminated;
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_simulate(
    scene: *const CsScene,
    config_json: *const c_char,
    out: *mut *mut CsResult,
) -> CsStatus {
    guard(|| {
        check_out(out, "out")?;
        let scene = ref_arg(scene, "scene")?;
        let config: SimulationConfig = if config_json.is_null() {
            SimulationConfig::default()
        } else {
            serde_json::from_str(str_arg(config_json, "config_json")?)
                .map_err(|e| (CsStatus::ConfigError, e.to_string()))?
        };
        let report = validate_scene(&scene.0, &SceneLimits::default());
        if !report.is_runnable() {
            let msg = serde_json::to_string(&report).expect("serializable");
            return Err((CsStatus::InvalidScene, msg));
        }
        let sim = Simulation::new(&scene.0, &config).map_err(|e| match e {
            SimError::InvalidConfig(_) => (CsStatus::ConfigError, e.to_string()),
            _ => (CsStatus::SimulationError, e.to_string()),
        })?;
        *out = Box::into_raw(Box::new(CsResult(ResultBundle::from_result(sim.run()))));
        Ok(())
    })
}

/// # Safety
/// `result` must be NULL or a handle from [`cs_simulate`], freed once.
#[no_mangle]
pub unsafe extern "C" fn cs_result_free(result: *mut CsResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// # Safety
/// `result` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_result_summary(
    result: *const CsResult,
    out: *mut CsSummary,
) -> CsStatus {
    guard(|| {
        check_out(out, "out")?;
        let s = &ref_arg(result, "result")?.0.summary;
        *out = CsSummary {
            simulation_time_s: s.simulation_time_s,
            agents_total: s.agents_total as u32,
            agents_arrived: s.agents_arrived as u32,
            distance_avg: s.distance_avg,
            distance_max: s.distance_max,
        };
        Ok(())
    })
}

/// Full result bundle as JSON, byte-identical to the CLI's result.json.
///
/// # Safety
/// `result` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_result_to_json(
    result: *const CsResult,
    out: *mut *mut c_char,
) -> CsStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = to_c_string(ref_arg(result, "result")?.0.to_json());
        Ok(())
    })
}

/// Trajectory CSV (`agent_id,step,x,y`).
///
/// # Safety
/// `result` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_result_trajectories_csv(
    result: *const CsResult,
    out: *mut *mut c_char,
) -> CsStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = to_c_string(export_trajectories(&ref_arg(result, "result")?.0.result));
        Ok(())
    })
}

/// Density grid as JSON (`cell_size`, `cols`, `rows`, `counts`).
///
/// # Safety
/// `result` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_result_density_json(
    result: *const CsResult,
    out: *mut *mut c_char,
) -> CsStatus {
    guard(|| {
        check_out(out, "out")?;
        let d = &ref_arg(result, "result")?.0.density;
        *out = to_c_string(serde_json::to_string(d).expect("serializable"));
        Ok(())
    })
}
