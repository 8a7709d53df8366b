use axum::body::Body;
use axum::http::{header, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tdm_core::sample::{SAMPLE_QT, SAMPLE_SQA};
use tdm_server::{router, AppState, Store};
use tower::ServiceExt;

struct Reply {
    status: StatusCode,
    headers: axum::http::HeaderMap,
    body: String,
}

impl Reply {
    fn json(&self) -> Value {
        serde_json::from_str(&self.body).unwrap()
    }
}

async fn send(app: &Router, req: Request<Body>) -> Reply {
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    let headers = res.headers().clone();
    let bytes = res.into_body().collect().await.unwrap().to_bytes();
    Reply {
        status,
        headers,
        body: String::from_utf8(bytes.to_vec()).unwrap(),
    }
}

async fn get(app: &Router, uri: &str) -> Reply {
    send(app, Request::get(uri).body(Body::empty()).unwrap()).await
}

async fn post(app: &Router, sqa: &str, qt: &str) -> Reply {
    let body = json!({ "sqa": sqa, "qt": qt }).to_string();
    let req = Request::post("/datasets")
        .header(header::CONTENT_TYPE, "application/json")
        .body(Body::from(body))
        .unwrap();
    send(app, req).await
}

fn app() -> Router {
    router(AppState::new(Store::in_memory()))
}

async fn sample(app: &Router) -> String {
    let r = post(app, SAMPLE_SQA, SAMPLE_QT).await;
    assert_eq!(r.status, StatusCode::CREATED, "{}", r.body);
    r.json()["id"].as_str().unwrap().to_string()
}

#[tokio::test]
async fn upload_then_model() {
    let app = app();
    let id = sample(&app).await;
    let again = post(&app, SAMPLE_SQA, SAMPLE_QT).await;
    assert_eq!(again.status, StatusCode::OK);
    assert_eq!(again.json()["id"], id);

    let model = get(&app, &format!("/datasets/{id}/model")).await;
    assert_eq!(model.status, StatusCode::OK);
    let doc = model.json();
    assert_eq!(doc["edges"].as_array().unwrap().len(), 11);
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 6);
}

#[tokio::test]
async fn rejects_bad_uploads() {
    let app = app();
    let bad = SAMPLE_SQA.replacen(",1\n", ",2\n", 1);
    let r = post(&app, &bad, SAMPLE_QT).await;
    assert_eq!(r.status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(r.json()["error"].as_str().unwrap().contains("non-binary"));
    assert!(r.json()["line"].as_u64().is_some());

    let req = Request::post("/datasets")
        .body(Body::from("not json"))
        .unwrap();
    assert_eq!(send(&app, req).await.status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn levels_list_empty_levels() {
    let app = app();
    let id = sample(&app).await;
    let r = get(&app, &format!("/datasets/{id}/levels")).await;
    let levels: Vec<Vec<String>> = r.json()["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| serde_json::from_value(l["edges"].clone()).unwrap())
        .collect();
    let expect: Vec<Vec<&str>> = vec![
        vec!["h1", "h2", "h3"],
        vec!["h4", "h5", "h6", "h7"],
        vec!["h8", "h9"],
        vec!["h10", "h11"],
        vec![],
        vec![],
    ];
    assert_eq!(levels, expect);
}

#[tokio::test]
async fn single_self_loop_dataset() {
    let app = app();
    let r = post(
        &app,
        "student_id,question_id,score\nS1,Q1,1\n",
        "question_id,topics\nQ1,A\n",
    )
    .await;
    let id = r.json()["id"].as_str().unwrap().to_string();
    let levels = get(&app, &format!("/datasets/{id}/levels")).await.json();
    assert_eq!(levels, json!({"levels": [{"level": 1, "edges": ["h1"]}]}));
}

#[tokio::test]
async fn views_and_errors() {
    let app = app();
    let id = sample(&app).await;
    let r = get(
        &app,
        &format!("/datasets/{id}/view?topics=T1&mode=accumulative&level=2&format=json"),
    )
    .await;
    assert_eq!(r.status, StatusCode::OK);
    assert_eq!(r.headers[header::CONTENT_TYPE], "application/json");
    assert_eq!(r.json()["panels"][0]["selected"], json!(["h4", "h5"]));

    let r = get(
        &app,
        &format!("/datasets/{id}/view?achv_max=0.6&level=3&mode=cumulative&format=json"),
    )
    .await;
    let level3 = &r.json()["panels"][0]["levels"][2];
    // h8 = {T1,T2,T6}, h9 = {T1,T4,T5}
    assert_eq!(level3["selected"], json!(["h9"]));
    assert_eq!(level3["greyed"], json!(["h8"]));

    let r = get(&app, &format!("/datasets/{id}/view")).await;
    assert_eq!(r.status, StatusCode::OK);
    assert_eq!(r.headers[header::CONTENT_TYPE], "image/svg+xml");
    assert_eq!(r.body.matches("data-status=\"selected\"").count(), 11);

    assert_eq!(
        get(&app, "/datasets/nope/view").await.status,
        StatusCode::NOT_FOUND
    );
    assert_eq!(
        get(&app, "/datasets/nope/levels").await.status,
        StatusCode::NOT_FOUND
    );
    for q in [
        "mode=cumulative",
        "achv_max=2",
        "level=9",
        "bogus=1",
        "topics=T9",
        "format=png",
    ] {
        let r = get(&app, &format!("/datasets/{id}/view?{q}")).await;
        assert_eq!(r.status, StatusCode::BAD_REQUEST, "{q}");
    }
}

#[tokio::test]
async fn conditional_get() {
    let app = app();
    let id = sample(&app).await;
    let uri = format!("/datasets/{id}/view?level=2");
    let first = get(&app, &uri).await;
    let etag = first.headers[header::ETAG].to_str().unwrap().to_string();
    let req = Request::get(&uri)
        .header(header::IF_NONE_MATCH, &etag)
        .body(Body::empty())
        .unwrap();
    let second = send(&app, req).await;
    assert_eq!(second.status, StatusCode::NOT_MODIFIED);
    assert!(second.body.is_empty());
}

#[tokio::test]
async fn cors_headers_present() {
    let app = app();
    let id = sample(&app).await;
    let req = Request::get(format!("/datasets/{id}/model"))
        .header(header::ORIGIN, "http://localhost:5173")
        .body(Body::empty())
        .unwrap();
    let r = send(&app, req).await;
    assert!(r.headers.contains_key(header::ACCESS_CONTROL_ALLOW_ORIGIN));
}
