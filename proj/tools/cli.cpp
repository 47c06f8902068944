// Copyright 2026 The HistoSeek Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <pthread.h>
#include <signal.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "histoseek/codec.hpp"
#include "histoseek/crawler.hpp"
#include "histoseek/error.hpp"
#include "histoseek/fetch.hpp"
#include "histoseek/ontology.hpp"
#include "histoseek/repository.hpp"
#include "histoseek/search.hpp"
#include "histoseek/service.hpp"

namespace histoseek::cli {

namespace fs = std::filesystem;

namespace {

struct CrawlArgs {
  std::string profile;
  std::string seeds_file;
  std::vector<std::string> seeds;
  std::string db;
  std::size_t max_pages = 100;
  std::size_t max_depth = 3;
  long delay_ms = 500;
  std::size_t workers = 1;
  std::string user_agent = "histoseek/0.1";
  bool allow_offsite = false;
  bool ignore_robots = false;
  bool no_image_cache = false;
};

struct SearchArgs {
  std::string db;
  std::string image;
  std::string mode = "exact";
  int tolerance = 0;
  std::string domain;
  std::string profiles_dir;
  std::vector<double> rel_range;
};

struct TransferArgs {
  std::string db;
  std::string path = "-";
};

struct ServeArgs {
  std::string db;
  std::string profiles_dir;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  std::size_t max_upload = std::size_t{16} << 20;
};

std::string require_db(const std::string& db) {
  if (!db.empty()) return db;
  if (const char* env = std::getenv("HISTOSEEK_DB"); env != nullptr && *env != '\0') return env;
  throw InvalidArgument("db", "no database given (use --db or HISTOSEEK_DB)");
}

std::string existing_db(const std::string& db) {
  std::string path = require_db(db);
  if (!fs::is_regular_file(path)) throw InvalidArgument("db", "database not found: " + path);
  return path;
}

Bytes read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("image", "cannot read " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

int do_crawl(const CrawlArgs& a, std::ostream& out) {
  CrawlConfig config;
  config.seeds = a.seeds;
  if (!a.seeds_file.empty()) {
    auto from_file = read_seeds_file(a.seeds_file);
    config.seeds.insert(config.seeds.end(), from_file.begin(), from_file.end());
  }
  config.max_pages = a.max_pages;
  config.max_depth = a.max_depth;
  config.per_host_delay = std::chrono::milliseconds(a.delay_ms);
  config.workers = a.workers;
  config.user_agent = a.user_agent;
  config.same_host_only = !a.allow_offsite;
  config.respect_robots = !a.ignore_robots;
  config.cache_images = !a.no_image_cache;
  validate(config);

  const DomainProfile profile = load_domain_profile_file(a.profile);
  Repository repo(require_db(a.db), Repository::Mode::kReadWrite);
  HttpFetcherOptions fetch_options;
  fetch_options.user_agent = a.user_agent;
  HttpFetcher fetcher(fetch_options);
  const CrawlReport report = crawl(config, profile, repo, fetcher);
  out << to_json(report) << '\n';
  return kExitOk;
}

int do_search(const SearchArgs& a, std::ostream& out) {
  Query query;
  query.mode = parse_match_mode(a.mode);
  query.tolerance = a.tolerance;
  query.domain = a.domain;
  if (!a.rel_range.empty()) query.rel_range = RelevanceRange{a.rel_range[0], a.rel_range[1]};
  const auto url = Url::parse(a.image);
  if (url && url->is_http()) {
    query.image = QueryImage::from_url(a.image);
  } else {
    query.image = QueryImage::from_bytes(read_file(a.image));
  }
  validate(query);

  ProfileSet profiles;
  if (!a.profiles_dir.empty()) profiles = ProfileSet::load_directory(a.profiles_dir);
  const Repository repo(existing_db(a.db), Repository::Mode::kReadOnly);
  HttpFetcher fetcher;
  for (const SearchResult& r : execute_search(query, repo, profiles, &fetcher)) {
    out << to_json_line(r) << '\n';
  }
  return kExitOk;
}

int do_export(const TransferArgs& a, std::ostream& out) {
  const Repository repo(existing_db(a.db), Repository::Mode::kReadOnly);
  if (a.path == "-") {
    repo.export_jsonl(out);
  } else {
    repo.export_jsonl(fs::path(a.path));
  }
  return kExitOk;
}

int do_import(const TransferArgs& a, std::ostream& out) {
  Repository repo(require_db(a.db), Repository::Mode::kReadWrite);
  std::size_t n = 0;
  if (a.path == "-") {
    n = repo.import_jsonl(std::cin);
  } else {
    if (!fs::is_regular_file(a.path)) throw InvalidArgument("in", "file not found: " + a.path);
    n = repo.import_jsonl(fs::path(a.path));
  }
  out << "imported " << n << " entries\n";
  return kExitOk;
}

int do_serve(const ServeArgs& a, std::ostream& out) {
  ServiceConfig config;
  config.host = a.host;
  config.port = a.port;
  config.db_path = existing_db(a.db);
  config.profiles_dir = a.profiles_dir;
  if (!a.static_dir.empty()) config.static_ui_dir = a.static_dir;
  config.max_upload_bytes = a.max_upload;

  // Termination signals are consumed by a dedicated thread so the server
  // can shut down cleanly instead of dying mid-request.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  Service service(config);
  const int port = service.bind();
  out << "listening on http://" << config.host << ':' << port << '\n' << std::flush;

  std::thread waiter([&service, signals] {
    int sig = 0;
    sigwait(&signals, &sig);
    service.stop();
  });
  service.run();
  // Wake the waiter if the server stopped on its own.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  pthread_sigmask(SIG_UNBLOCK, &signals, nullptr);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Domain-specific image search: crawl, index and query by grayscale signature",
               "histoseek"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "histoseek 0.1.0");

  CrawlArgs crawl_args;
  auto* crawl_cmd = app.add_subcommand("crawl", "Crawl seed URLs and index relevant images");
  crawl_cmd->add_option("--profile", crawl_args.profile, "Domain profile JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  crawl_cmd->add_option("--seeds", crawl_args.seeds_file, "File with one seed URL per line")
      ->check(CLI::ExistingFile);
  crawl_cmd->add_option("--seed", crawl_args.seeds, "Seed URL (repeatable)");
  crawl_cmd->add_option("--db", crawl_args.db, "Repository database (default $HISTOSEEK_DB)");
  crawl_cmd->add_option("--max-pages", crawl_args.max_pages, "Page budget")
      ->check(CLI::PositiveNumber);
  crawl_cmd->add_option("--max-depth", crawl_args.max_depth, "Link depth limit");
  crawl_cmd->add_option("--delay-ms", crawl_args.delay_ms, "Per-host politeness delay")
      ->check(CLI::NonNegativeNumber);
  crawl_cmd->add_option("--workers", crawl_args.workers, "Concurrent fetch workers")
      ->check(CLI::PositiveNumber);
  crawl_cmd->add_option("--user-agent", crawl_args.user_agent, "User-Agent header");
  crawl_cmd->add_flag("--allow-offsite", crawl_args.allow_offsite,
                      "Follow links to hosts other than the seeds'");
  crawl_cmd->add_flag("--ignore-robots", crawl_args.ignore_robots, "Skip robots.txt checks");
  crawl_cmd->add_flag("--no-image-cache", crawl_args.no_image_cache,
                      "Store signatures only, without thumbnail bytes");

  SearchArgs search_args;
  auto* search_cmd = app.add_subcommand("search", "Query the repository with an image");
  search_cmd->add_option("--db", search_args.db, "Repository database (default $HISTOSEEK_DB)");
  search_cmd->add_option("--image", search_args.image, "Query image file or http(s) URL")
      ->required();
  search_cmd->add_option("--mode", search_args.mode, "exact or probable")
      ->check(CLI::IsMember({"exact", "probable"}));
  auto* tolerance_opt = search_cmd->add_option("--tolerance", search_args.tolerance,
                                               "Probable-match tolerance, 0 to 100")
                            ->check(CLI::Range(0, 100));
  search_cmd->add_option("--domain", search_args.domain, "Domain to search")->required();
  search_cmd->add_option("--profiles", search_args.profiles_dir, "Directory of domain profiles")
      ->check(CLI::ExistingDirectory);
  search_cmd->add_option("--range", search_args.rel_range, "Relevance range MIN MAX")
      ->expected(2);

  TransferArgs export_args;
  auto* export_cmd = app.add_subcommand("export", "Write the repository as JSON lines");
  export_cmd->add_option("--db", export_args.db, "Repository database (default $HISTOSEEK_DB)");
  export_cmd->add_option("--out", export_args.path, "Output file, - for stdout");

  TransferArgs import_args;
  auto* import_cmd = app.add_subcommand("import", "Load JSON lines into the repository");
  import_cmd->add_option("--db", import_args.db, "Repository database (default $HISTOSEEK_DB)");
  import_cmd->add_option("--in", import_args.path, "Input file, - for stdin");

  ServeArgs serve_args;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP search service");
  serve_cmd->add_option("--db", serve_args.db, "Repository database (default $HISTOSEEK_DB)");
  serve_cmd->add_option("--profiles", serve_args.profiles_dir, "Directory of domain profiles")
      ->required()
      ->check(CLI::ExistingDirectory);
  serve_cmd->add_option("--host", serve_args.host, "Listen address");
  serve_cmd->add_option("--port", serve_args.port, "Listen port, 0 for any")
      ->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--static", serve_args.static_dir, "Web UI directory")
      ->check(CLI::ExistingDirectory);
  serve_cmd->add_option("--max-upload", serve_args.max_upload, "Largest accepted query image")
      ->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (search_cmd->parsed() && search_args.mode == "exact" && tolerance_opt->count() > 0 &&
        search_args.tolerance != 0) {
      throw CLI::ValidationError("--tolerance", "exact mode requires tolerance 0");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "histoseek: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (crawl_cmd->parsed()) {
      if (crawl_args.seeds.empty() && crawl_args.seeds_file.empty()) {
        throw InvalidArgument("seeds", "no seeds given (use --seeds or --seed)");
      }
      return do_crawl(crawl_args, out);
    }
    if (search_cmd->parsed()) return do_search(search_args, out);
    if (export_cmd->parsed()) return do_export(export_args, out);
    if (import_cmd->parsed()) return do_import(import_args, out);
    return do_serve(serve_args, out);
  } catch (const InvalidArgument& e) {
    err << "histoseek: " << (e.field().empty() ? "" : e.field() + ": ") << e.what() << '\n';
    return kExitUsage;
  } catch (const ProfileError& e) {
    err << "histoseek: profile: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "histoseek: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "histoseek: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace histoseek::cli
