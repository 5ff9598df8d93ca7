#include "vrcap/io.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace vrcap {

using nlohmann::json;

namespace {

json box_json(const BBox& b) { return json::array({b.x1, b.y1, b.x2, b.y2}); }

BBox box_from(const json& j) {
  if (!j.is_array() || j.size() != 4) throw IoError("bbox must be [x1,y1,x2,y2]");
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
}

json view_json(const View& v) {
  return {{"entity_id", v.entity_id},
          {"visible", v.visible_tokens},
          {"variation", v.variation_tokens},
          {"identity_size", v.identity_size},
          {"bbox", box_json(v.bbox)}};
}

View view_from(const json& j) {
  View v;
  v.entity_id = j.at("entity_id").get<int>();
  v.visible_tokens = j.at("visible").get<std::vector<int>>();
  v.variation_tokens = j.at("variation").get<std::vector<int>>();
  v.identity_size = j.at("identity_size").get<int>();
  v.bbox = box_from(j.at("bbox"));
  return v;
}

void ensure_parent(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  ensure_parent(path);
  std::ofstream os(path, mode | std::ios::trunc);
  if (!os) throw IoError("cannot write '" + path + "'");
  return os;
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream is(path, mode);
  if (!is) throw IoError("cannot read '" + path + "'");
  return is;
}

}  // namespace

std::string record_to_json(const TaskRecord& r) {
  json j;
  j["id"] = r.record_id;
  j["kind"] = to_string(r.kind);
  j["detail"] = r.detail;
  j["instruction"] = r.instruction.tokens;
  json demos = json::array();
  for (const auto& d : r.demonstrations)
    demos.push_back({{"name", d.name}, {"info", d.info}, {"view", view_json(d.view)}});
  j["demonstrations"] = demos;
  if (const View* v = r.query_view()) {
    j["query"] = {{"view", view_json(*v)}};
  } else {
    const Scene& s = *r.query_scene();
    json views = json::array();
    for (const auto& v : s.views) views.push_back(view_json(v));
    j["query"] = {{"scene", {{"width", s.width}, {"height", s.height}, {"views", views}}}};
  }
  if (r.gold.is_binary()) {
    j["gold"] = r.gold.binary() == BinaryAnswer::yes ? "yes" : "no";
  } else if (r.gold.is_box()) {
    j["gold"] = box_json(r.gold.box());
  } else {
    j["gold"] = {{"names", r.gold.names()}};
  }
  if (r.kind == TaskKind::VLT) {
    j["target_name"] = r.target_name;
    j["target_index"] = r.target_index;
  }
  return j.dump();
}

TaskRecord record_from_json(const std::string& line) {
  try {
    const json j = json::parse(line);
    TaskRecord r;
    r.record_id = j.at("id").get<std::int64_t>();
    r.kind = task_kind_from_string(j.at("kind").get<std::string>());
    r.detail = j.at("detail").get<bool>();
    r.instruction.tokens = j.at("instruction").get<std::vector<TokenId>>();
    for (const auto& d : j.at("demonstrations"))
      r.demonstrations.push_back({d.at("name").get<std::string>(), view_from(d.at("view")),
                                  d.at("info").get<std::string>()});
    const auto& q = j.at("query");
    if (q.contains("view")) {
      r.query = view_from(q.at("view"));
    } else {
      const auto& s = q.at("scene");
      Scene sc;
      sc.width = s.at("width").get<int>();
      sc.height = s.at("height").get<int>();
      for (const auto& v : s.at("views")) sc.views.push_back(view_from(v));
      r.query = std::move(sc);
    }
    const auto& g = j.at("gold");
    if (g.is_string()) {
      const auto s = g.get<std::string>();
      if (s != "yes" && s != "no") throw IoError("gold must be yes or no");
      r.gold.value = s == "yes" ? BinaryAnswer::yes : BinaryAnswer::no;
    } else if (g.is_array()) {
      r.gold.value = box_from(g);
    } else {
      r.gold.value = g.at("names").get<std::vector<std::string>>();
    }
    if (j.contains("target_name")) r.target_name = j["target_name"].get<std::string>();
    if (j.contains("target_index")) r.target_index = j["target_index"].get<int>();
    if (auto err = check_record(r)) throw IoError("invalid record: " + *err);
    return r;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed dataset line: ") + e.what());
  } catch (const ConfigError& e) {
    throw IoError(std::string("malformed dataset line: ") + e.what());
  }
}

void write_dataset(const std::string& path, const std::vector<TaskRecord>& records) {
  auto os = open_out(path, std::ios::out | std::ios::binary);
  for (const auto& r : records) os << record_to_json(r) << '\n';
}

std::vector<TaskRecord> read_dataset(const std::string& path) {
  auto is = open_in(path);
  std::vector<TaskRecord> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(is, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(record_from_json(line));
    } catch (const IoError& e) {
      throw IoError(path + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

void write_manifest(const std::string& path, const DatasetManifest& m, const ArtifactStamp& stamp,
                    std::uint64_t vocab_hash, const std::vector<std::string>& files) {
  json counts = json::object();
  for (const auto& [k, n] : m.counts) counts[std::string(to_string(k))] = n;
  json j = {{"total", m.total},
            {"counts", counts},
            {"detail_count", m.detail_count},
            {"ict_fraction", m.ict_fraction},
            {"dataset_seed", m.seed},
            {"seed", stamp.seed},
            {"config_hash", stamp.config_hash},
            {"vocab_hash", hex64(vocab_hash)},
            {"warnings", m.warnings},
            {"files", files}};
  write_text(path, j.dump(2) + "\n");
}

std::string read_manifest_config_hash(const std::string& path) {
  try {
    return json::parse(read_text(path)).at("config_hash").get<std::string>();
  } catch (const json::exception& e) {
    throw IoError("malformed manifest '" + path + "': " + e.what());
  }
}

void write_checkpoint(const std::string& path, const PolicyParams& p, const CheckpointHeader& h) {
  if (p.theta.size() != static_cast<std::size_t>(p.vocab_size) * p.feature_dim)
    throw ContractError("write_checkpoint: parameter shape mismatch");
  json head = {{"format", "vrcap-checkpoint"},
               {"version", 1},
               {"vocab_size", p.vocab_size},
               {"feature_dim", p.feature_dim},
               {"vocab_hash", hex64(h.vocab_hash)},
               {"config_hash", h.config_hash},
               {"seed", h.seed},
               {"step", h.step},
               {"encoding", "float64-le"}};
  auto os = open_out(path, std::ios::out | std::ios::binary);
  os << head.dump() << '\n';
  for (double v : p.theta) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    char buf[8];
    std::memcpy(buf, &bits, 8);
    os.write(buf, 8);
  }
  if (!os) throw IoError("write failed for '" + path + "'");
}

PolicyParams read_checkpoint(const std::string& path, CheckpointHeader* header) {
  auto is = open_in(path, std::ios::in | std::ios::binary);
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty checkpoint '" + path + "'");
  json head = json::parse(line, nullptr, false);
  if (head.is_discarded() || !head.is_object() || head.value("format", "") != "vrcap-checkpoint")
    throw IoError("'" + path + "' is not a checkpoint");
  CheckpointHeader h;
  try {
    h.vocab_size = head.at("vocab_size").get<int>();
    h.feature_dim = head.at("feature_dim").get<int>();
    h.vocab_hash = std::stoull(head.at("vocab_hash").get<std::string>(), nullptr, 16);
    h.config_hash = head.at("config_hash").get<std::string>();
    h.seed = head.at("seed").get<std::uint64_t>();
    h.step = head.at("step").get<int>();
  } catch (const std::exception& e) {
    throw IoError("malformed checkpoint header: " + std::string(e.what()));
  }
  if (h.vocab_size < 1 || h.feature_dim < 1) throw IoError("checkpoint has an empty shape");
  PolicyParams p(h.vocab_size, h.feature_dim);
  for (double& v : p.theta) {
    char buf[8];
    if (!is.read(buf, 8)) throw IoError("checkpoint '" + path + "' is truncated");
    std::uint64_t bits;
    std::memcpy(&bits, buf, 8);
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    v = std::bit_cast<double>(bits);
  }
  if (is.peek() != std::char_traits<char>::eof()) throw IoError("checkpoint '" + path + "' has trailing bytes");
  if (header) *header = h;
  return p;
}

std::string params_hash(const PolicyParams& p) {
  std::uint64_t h = fnv1a64(std::to_string(p.vocab_size) + "x" + std::to_string(p.feature_dim));
  for (double v : p.theta) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    h = fnv1a64(std::string_view(buf, 8), h);
  }
  return hex64(h);
}

std::string trainlog_header() {
  return "step,reward_oct,reward_vlt,reward_ict1,reward_ictm,reward_ict,reward_total,loss,mean_kl,"
         "clip_fraction,mean_length";
}

std::string trainlog_row(const TrainLogRow& r) {
  std::ostringstream os;
  os << std::setprecision(10);
  auto opt = [&](std::optional<double> v) {
    os << ',';
    if (v) os << *v;
  };
  auto kind = [&](TaskKind k) {
    const auto it = r.mean_task_reward.find(k);
    opt(it == r.mean_task_reward.end() ? std::nullopt : std::optional<double>(it->second));
  };
  os << r.step;
  kind(TaskKind::OCT);
  kind(TaskKind::VLT);
  kind(TaskKind::ICT1);
  kind(TaskKind::ICTM);
  opt(r.mean_ict_reward);
  os << ',' << r.mean_total_reward << ',' << r.loss << ',' << r.mean_kl << ','
     << r.clip_fraction << ',' << r.mean_length;
  return os.str();
}

void write_trainlog(std::ostream& os, const TrainLog& log, const ArtifactStamp& stamp) {
  os << "# config_hash=" << stamp.config_hash << " seed=" << stamp.seed << '\n';
  os << trainlog_header() << '\n';
  for (const auto& r : log.rows) os << trainlog_row(r) << '\n';
}

void write_database(const std::string& path, const std::vector<ConceptRecord>& records) {
  auto os = open_out(path, std::ios::out | std::ios::binary);
  for (const auto& r : records)
    os << json{{"name", r.name}, {"info", r.info}, {"entity_id", r.entity_id},
               {"embedding", r.embedding.values}}
              .dump()
       << '\n';
}

std::vector<ConceptRecord> read_database(const std::string& path) {
  auto is = open_in(path);
  std::vector<ConceptRecord> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      out.push_back({j.at("name").get<std::string>(), j.at("info").get<std::string>(),
                     {j.at("embedding").get<std::vector<double>>()}, j.at("entity_id").get<int>()});
    } catch (const json::exception& e) {
      throw IoError("malformed database line in '" + path + "': " + e.what());
    }
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  auto os = open_out(path, std::ios::out | std::ios::binary);
  os << text;
  if (!os) throw IoError("write failed for '" + path + "'");
}

std::string read_text(const std::string& path) {
  auto is = open_in(path, std::ios::in | std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace vrcap
