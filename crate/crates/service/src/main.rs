use clap::Parser;
use lc_service::{serve, AppState};

#[derive(Parser)]
#[command(name = "lc-service", version, about = "HTTP API for LC root approximation")]
struct Args {
    #[arg(long, default_value_t = 8080)]
    port: u16,
    /// Largest partition size accepted by /api/map and /api/solve.
    #[arg(long, default_value_t = lc_service::DEFAULT_MAX_N)]
    max_n: usize,
}

#[tokio::main]
async fn main() -> anyhow::Result<()> {
    tracing_subscriber::fmt()
        .with_env_filter(tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()))
        .with_writer(std::io::stderr)
        .init();
    let args = Args::parse();
    serve(args.port, AppState::new(args.max_n)).await
}
