use clap::Parser;
use pcolor::alloc_counter::{self, CountingAlloc};

#[global_allocator]
static GLOBAL: CountingAlloc = CountingAlloc;

fn main() {
    alloc_counter::enable();
    let cli = pcolor::Cli::parse();
    std::process::exit(pcolor::run(cli));
}
