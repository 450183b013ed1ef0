#include "fairalloc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace fairalloc {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim ASCII whitespace
    std::size_t b = field.find_first_not_of(" \t\r");
    std::size_t e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

Instance load_instance(std::istream& in, const std::string& origin) {
  std::string line;
  if (!std::getline(in, line)) throw InputError(origin + ": empty instance file");
  const auto header = split_csv(line);
  const std::size_t m = header.size();
  if (m < 2) throw InputError(origin + ": expected header r1,...,rm with m >= 2");
  for (std::size_t r = 0; r < m; ++r) {
    if (header[r] != "r" + std::to_string(r + 1))
      throw InputError(origin + ": bad header column " + std::to_string(r + 1) + " ('" +
                       header[r] + "', expected 'r" + std::to_string(r + 1) + "')");
  }

  std::vector<std::vector<double>> raw;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;  // blank
    const auto fields = split_csv(line);
    if (fields.size() != m)
      throw InputError(origin + ":" + std::to_string(lineno) + ": expected " + std::to_string(m) +
                       " fields, got " + std::to_string(fields.size()));
    std::vector<double> row(m);
    for (std::size_t r = 0; r < m; ++r) {
      try {
        std::size_t used = 0;
        row[r] = std::stod(fields[r], &used);
        if (used != fields[r].size()) throw std::invalid_argument("trailing junk");
      } catch (const std::exception&) {
        throw InputError(origin + ":" + std::to_string(lineno) + ": bad number '" + fields[r] + "'");
      }
      if (!std::isfinite(row[r]) || row[r] <= 0.0)
        throw InputError(origin + ":" + std::to_string(lineno) +
                         ": demands must be positive and finite");
    }
    raw.push_back(std::move(row));
  }
  if (raw.empty()) throw InputError(origin + ": no agent rows");
  return normalize(raw);
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file: " + path);
  return load_instance(in, path);
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void save_instance(std::ostream& out, const Instance& inst) {
  const int m = inst.m();
  for (int r = 0; r < m; ++r) out << (r ? "," : "") << "r" << (r + 1);
  out << "\n";
  for (const auto& d : inst.demands) {
    for (int r = 0; r < m; ++r) out << (r ? "," : "") << format_double(d[r]);
    out << "\n";
  }
}

void save_instance_file(const std::string& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open output file: " + path);
  save_instance(out, inst);
}

}  // namespace fairalloc
