// Drive the study endpoints in-process: fetch a target, preview a pick, log a trial, export.
use std::sync::Arc;

use axum::body::Body;
use axum::http::Request;
use colorlab::service::{router, AppState};
use http_body_util::BodyExt;
use tower::ServiceExt;

async fn call(app: &axum::Router, method: &str, uri: &str, body: Option<String>) -> (u16, String) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map_or_else(Body::empty, Body::from))
        .expect("request");
    let res = app.clone().oneshot(req).await.expect("response");
    let status = res.status().as_u16();
    let bytes = res.into_body().collect().await.expect("body").to_bytes();
    (status, String::from_utf8_lossy(&bytes).into_owned())
}

pub fn run_example() -> String {
    let dir = tempfile::tempdir().expect("tempdir");
    let app = router(Arc::new(AppState::new(dir.path(), 7).expect("state")));
    let rt = tokio::runtime::Runtime::new().expect("runtime");
    rt.block_on(async {
        let (_, target) = call(&app, "POST", "/target", None).await;
        println!("target: {target}");
        let id: serde_json::Value = serde_json::from_str(&target).expect("json");
        let trial_id = id["trial_id"].as_str().expect("id").to_owned();

        let pick = r#"{"model":"hsv","components":[30,0.8,0.9]}"#;
        println!("preview: {:?}", call(&app, "POST", "/convert", Some(pick.into())).await);
        let bad = r#"{"model":"hsv","components":[30,1.8,0.9]}"#;
        println!("out of range: {:?}", call(&app, "POST", "/convert", Some(bad.into())).await);

        let trial = format!(
            r#"{{"trial_id":"{trial_id}","participant_id":"p01","model":"hsv","components":[30,0.8,0.9],"elapsed_s":41.5}}"#
        );
        println!("trial: {:?}", call(&app, "POST", "/trial", Some(trial)).await);
        let (_, csv) = call(&app, "GET", "/export", None).await;
        print!("{csv}");
        csv
    })
}

#[allow(dead_code)]
fn main() {
    run_example();
}
