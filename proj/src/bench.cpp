#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "hyperbmc/driver.hpp"
#include "hyperbmc/error.hpp"

namespace hyperbmc {

namespace fs = std::filesystem;

namespace {

CheckConfig config_from_manifest(const fs::path& dir, const nlohmann::json& m) {
  CheckConfig cfg;
  auto path_of = [&](const char* key) {
    if (!m.contains(key) || !m[key].is_string()) throw Error(std::string("manifest lacks string field '") + key + "'");
    return (dir / m[key].get<std::string>()).string();
  };
  cfg.left_path = path_of("left");
  cfg.right_path = path_of("right");
  cfg.property_path = path_of("property");
  if (m.contains("prophecy")) {
    const std::string p = m["prophecy"].get<std::string>();
    cfg.prophecy = ProphecySpec::parse(p);
    if (cfg.prophecy.kind == ProphecySpec::Kind::File) cfg.prophecy.file = (dir / cfg.prophecy.file).string();
  }
  if (m.contains("mode")) {
    const std::string mode = m["mode"].get<std::string>();
    if (mode == "ae") cfg.mode = Pattern::ForallExists;
    else if (mode == "ea") cfg.mode = Pattern::ExistsForall;
    else throw Error("manifest mode must be 'ae' or 'ea'");
  }
  if (m.contains("max_bound")) cfg.options.max_bound = m["max_bound"].get<std::size_t>();
  if (m.contains("max_depth")) cfg.options.max_depth = m["max_depth"].get<std::size_t>();
  return cfg;
}

}  // namespace

std::vector<BenchRow> run_benchmarks(const std::string& corpus_dir, const std::string& backend) {
  if (!fs::is_directory(corpus_dir)) throw Error("corpus directory '" + corpus_dir + "' does not exist");
  std::vector<fs::path> cases;
  for (const auto& entry : fs::directory_iterator(corpus_dir)) {
    if (entry.is_directory() && fs::exists(entry.path() / "manifest.json")) cases.push_back(entry.path());
  }
  std::sort(cases.begin(), cases.end());
  std::vector<BenchRow> rows;
  for (const auto& dir : cases) {
    BenchRow row;
    row.name = dir.filename().string();
    try {
      std::ifstream in(dir / "manifest.json");
      const nlohmann::json m = nlohmann::json::parse(in);
      row.expected = m.value("expected", "");
      CheckConfig cfg = config_from_manifest(dir, m);
      cfg.backend = backend;
      const Report r = run_check(cfg);
      row.left_states = r.left_original.size();
      row.right_states = r.right.size();
      row.verdict = to_string(r.verdict);
      row.bound = r.bound;
      row.subset_size = r.subset_size;
      row.seconds = r.seconds;
    } catch (const std::exception& e) {
      row.verdict = "error";
      row.error = e.what();
    }
    row.matches = row.error.empty() && row.verdict == row.expected;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_bench_table(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(12) << "Case" << std::right << std::setw(7) << "|S_P|" << std::setw(7) << "|S_Q|"
     << "  " << std::left << std::setw(10) << "verdict" << std::setw(10) << "expected" << std::right << std::setw(7)
     << "bound" << std::setw(8) << "subset" << std::setw(10) << "time[s]" << '\n';
  for (const auto& r : rows) {
    os << std::left << std::setw(12) << r.name << std::right << std::setw(7) << r.left_states << std::setw(7)
       << r.right_states << "  " << std::left << std::setw(10) << r.verdict << std::setw(10) << r.expected
       << std::right << std::setw(7) << (r.bound ? std::to_string(*r.bound) : "-") << std::setw(8)
       << (r.subset_size ? std::to_string(*r.subset_size) : "-") << std::setw(10) << std::fixed
       << std::setprecision(3) << r.seconds;
    if (!r.matches) os << "  MISMATCH";
    if (!r.error.empty()) os << "  " << r.error;
    os << '\n';
  }
  return os.str();
}

}  // namespace hyperbmc
