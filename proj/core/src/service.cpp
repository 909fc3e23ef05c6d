/*
 * Copyright 2026 The fragc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fragc/service.hpp"

#include <atomic>
#include <fstream>
#include <regex>

#include "fragc/dataset.hpp"
#include "fragc/digest.hpp"
#include "fragc/error.hpp"
#include "fragc/pipeline.hpp"
#include "fragc/tar_reader.hpp"
#include "httplib.h"
#include "json.hpp"

#ifndef FRAGC_VERSION
#define FRAGC_VERSION "0.0.0"
#endif

namespace fragc {

std::string_view version() noexcept { return FRAGC_VERSION; }

namespace {

using nlohmann::ordered_json;

/// Request-level failure carrying the HTTP status to answer with.
struct HttpFailure {
  int status;
  std::string reason;
  std::string stage;
};

std::span<const std::uint8_t> bytes_of(const std::string& s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("cannot write " + path.string());
}

/// Frame files inside an upload keep only their base name, and only names
/// following the frame directory convention are accepted.
bool is_frame_name(const std::string& name) {
  static const std::regex kPattern(R"(^[^/\\]+_\d{6}\.png$)");
  return std::regex_match(name, kPattern);
}

std::string base_name(const std::string& name) {
  const auto slash = name.find_last_of("/\\");
  return slash == std::string::npos ? name : name.substr(slash + 1);
}

/// An upload materialized on disk as a FrameSourceSpec.
struct StagedUpload {
  TempDir dir{"fragc-upload"};
  FrameSourceSpec spec;
};

void stage_archive(const std::string& content, StagedUpload& staged) {
  std::vector<TarMember> members;
  try {
    members = read_tar(bytes_of(content));
  } catch (const InvalidInput& e) {
    throw HttpFailure{400, std::string("malformed frame archive: ") + e.what(), "upload"};
  }
  for (const auto& m : members) {
    const auto name = base_name(m.name);
    if (!is_frame_name(name)) continue;
    std::ofstream out(staged.dir.path() / name, std::ios::binary);
    out.write(reinterpret_cast<const char*>(m.data.data()), static_cast<std::streamsize>(m.data.size()));
  }
}

std::unique_ptr<StagedUpload> stage_upload(const httplib::Request& req, int fps) {
  if (!req.is_multipart_form_data()) {
    throw HttpFailure{400, "expected multipart/form-data upload", "upload"};
  }
  auto staged = std::make_unique<StagedUpload>();
  staged->spec.kind = SourceKind::FrameDirectory;
  staged->spec.path = staged->dir.path();
  staged->spec.declared_fps = fps;

  auto stage_video = [&](const httplib::MultipartFormData& part) {
    if (part.content.empty()) throw HttpFailure{400, "empty video upload", "upload"};
    auto ext = std::filesystem::path(base_name(part.filename)).extension().string();
    if (ext.empty()) ext = ".bin";
    const auto path = staged->dir.path() / ("upload" + ext);
    write_file(path, part.content);
    staged->spec.kind = SourceKind::VideoFile;
    staged->spec.path = path;
  };

  if (req.has_file("video")) {
    stage_video(req.get_file_value("video"));
  } else if (req.has_file("archive")) {
    const auto part = req.get_file_value("archive");
    if (!looks_like_tar(bytes_of(part.content))) throw HttpFailure{400, "archive is not a tar file", "upload"};
    stage_archive(part.content, *staged);
  } else if (req.has_file("frame")) {
    for (const auto& part : req.get_file_values("frame")) {
      const auto name = base_name(part.filename);
      if (!is_frame_name(name)) {
        throw HttpFailure{400, "frame part '" + part.filename + "' is not named <stem>_<NNNNNN>.png", "upload"};
      }
      write_file(staged->dir.path() / name, part.content);
    }
  } else if (req.has_file("file")) {
    const auto part = req.get_file_value("file");
    if (looks_like_tar(bytes_of(part.content))) {
      stage_archive(part.content, *staged);
    } else {
      stage_video(part);
    }
  } else {
    throw HttpFailure{400, "upload needs a 'video', 'archive', 'frame' or 'file' part", "upload"};
  }
  return staged;
}

template <class T>
T parse_param(const httplib::Request& req, const char* key, T fallback) {
  if (!req.has_param(key)) return fallback;
  const auto text = req.get_param_value(key);
  try {
    if constexpr (std::is_same_v<T, int>) {
      std::size_t used = 0;
      const int v = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } else {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    }
  } catch (const std::exception&) {
    throw HttpFailure{400, std::string("bad value for '") + key + "': " + text, "request"};
  }
}

CounterConfig request_counter(const httplib::Request& req, const CounterConfig& defaults) {
  CounterConfig cfg = defaults;
  cfg.threshold = parse_param(req, "threshold", cfg.threshold);
  if (req.has_param("count_mode")) {
    try {
      cfg.mode = parse_count_mode(req.get_param_value("count_mode"));
    } catch (const InvalidInput& e) {
      throw HttpFailure{400, e.what(), "request"};
    }
  }
  try {
    cfg.validate();
  } catch (const InvalidInput& e) {
    throw HttpFailure{400, e.what(), "request"};
  }
  return cfg;
}

/// Ingest and preprocess failures come from the uploaded bytes; anything
/// later is the server's fault.
HttpFailure classify_failure(const StageError& e) {
  const bool client = e.stage() == "ingest" || e.stage() == "preprocess";
  return HttpFailure{client ? 400 : 500, e.what(), e.stage()};
}

void send_error(httplib::Response& res, const HttpFailure& f) {
  ordered_json j{{"error", f.reason}, {"stage", f.stage}, {"status", f.status}};
  res.status = f.status;
  res.set_content(j.dump(), "application/json");
}

}  // namespace

struct Service::Impl {
  explicit Impl(ServiceConfig c) : config(std::move(c)) {}

  ServiceConfig config;
  httplib::Server server;
  std::atomic<std::uint64_t> requests{0};
  std::atomic<std::uint64_t> collect_seq{0};
  bool bound = false;

  template <class Fn>
  void guarded(httplib::Response& res, Fn&& fn) {
    ++requests;
    try {
      fn();
    } catch (const HttpFailure& f) {
      send_error(res, f);
    } catch (const StageError& e) {
      send_error(res, classify_failure(e));
    } catch (const InvalidInput& e) {
      send_error(res, HttpFailure{400, e.what(), "request"});
    } catch (const std::exception& e) {
      send_error(res, HttpFailure{500, e.what(), "server"});
    }
  }

  AnalyzeOptions options() const {
    AnalyzeOptions o;
    o.decoder = config.decoder;
    return o;
  }

  void install_routes() {
    server.set_payload_max_length(config.max_upload_bytes);

    server.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
      ++requests;
      ordered_json names = ordered_json::array();
      for (const auto& b : config.backends) names.push_back(b->name());
      ordered_json j{{"status", "ok"},
                     {"version", std::string(version())},
                     {"backends", names},
                     {"requests_served", requests.load()}};
      res.set_content(j.dump(), "application/json");
    });

    server.Post("/analyze", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto format = req.has_param("format") ? req.get_param_value("format") : std::string("json");
        if (format != "json" && format != "csv") {
          throw HttpFailure{400, "format must be json or csv", "request"};
        }
        const auto cfg = request_counter(req, config.counter);
        const auto staged = stage_upload(req, parse_param(req, "fps", kStreamFps));
        const auto report = analyze(staged->spec, config.backends, cfg, options());
        if (format == "csv") {
          res.set_content(to_csv(report), "text/csv");
        } else {
          res.set_content(report_to_json(report), "application/json");
        }
      });
    });

    server.Post("/collect", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto cfg = request_counter(req, config.counter);
        const auto staged = stage_upload(req, parse_param(req, "fps", kStreamFps));
        std::vector<RawFrame> sampled;
        AnalyzeOptions opts = options();
        opts.on_frame = [&](const FrameEvent& ev) {
          if (ev.prediction.gated) sampled.push_back(ev.frame);
        };
        const auto report = analyze(staged->spec, config.backends, cfg, opts);
        const auto out_dir = config.collect_dir / (report.input_digest.substr(0, 16) + "-" +
                                                   std::to_string(++collect_seq));
        const auto manifest = collect_dataset(report, sampled, out_dir);
        auto j = ordered_json::parse(manifest.to_json());
        j["root"] = out_dir.string();
        j["counts"] = ordered_json::object();
        for (auto [c, n] : report.counts.nonzero()) j["counts"][std::string(class_name(c))] = n;
        res.set_content(j.dump(2), "application/json");
      });
    });
  }
};

Service::Service(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {
  if (impl_->config.backends.empty()) throw InvalidInput("service needs at least one backend");
  impl_->config.counter.validate();
  const auto threads = impl_->config.worker_threads;
  impl_->server.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  impl_->install_routes();
}

Service::~Service() { stop(); }

int Service::bind() {
  auto& cfg = impl_->config;
  if (cfg.port == 0) {
    cfg.port = impl_->server.bind_to_any_port(cfg.host);
    if (cfg.port < 0) throw IoError("cannot bind " + cfg.host);
  } else if (!impl_->server.bind_to_port(cfg.host, cfg.port)) {
    throw IoError("cannot bind " + cfg.host + ":" + std::to_string(cfg.port));
  }
  impl_->bound = true;
  return cfg.port;
}

void Service::serve() {
  if (!impl_->bound) throw Error("Service::serve called before bind");
  impl_->server.listen_after_bind();
}

void Service::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

std::uint64_t Service::requests_served() const noexcept { return impl_->requests.load(); }

const ServiceConfig& Service::config() const noexcept { return impl_->config; }

}  // namespace fragc
