#include "lorhelix/curve_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "lorhelix/error.hpp"

namespace lorhelix {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> to_double(std::string_view t) {
  while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.remove_prefix(1);
  while (!t.empty() && (t.back() == ' ' || t.back() == '\t' || t.back() == '\r')) t.remove_suffix(1);
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

void write_vec(std::ostream& out, const LorentzVector& v) {
  out << '[' << format_number(v.x1()) << ',' << format_number(v.x2()) << ','
      << format_number(v.x3()) << ']';
}

LorentzVector vec_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::ParseError, "expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

CurveFormat format_for(const std::filesystem::path& path) {
  return path.extension() == ".json" ? CurveFormat::Json : CurveFormat::Csv;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const CurveSamples& samples, bool with_frames) {
  samples.validate();
  const bool frames = with_frames && samples.frames.has_value();
  out << "s,x1,x2,x3";
  if (frames) out << ",Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz";
  out << '\n';
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& p = samples.psi[i];
    out << format_number(samples.s[i]) << ',' << format_number(p.x1()) << ','
        << format_number(p.x2()) << ',' << format_number(p.x3());
    if (frames) {
      const auto& f = (*samples.frames)[i];
      for (const auto* v : {&f.T, &f.N, &f.B}) {
        out << ',' << format_number(v->x1()) << ',' << format_number(v->x2()) << ','
            << format_number(v->x3());
      }
    }
    out << '\n';
  }
}

CurveSamples read_csv(std::istream& in) {
  CurveSamples out;
  std::string line;
  std::size_t lineno = 0;
  std::size_t columns = 0;
  std::vector<FrenetFrame> frames;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto fields = split(line, ',');
    std::vector<double> values;
    values.reserve(fields.size());
    bool numeric = true;
    for (auto f : fields) {
      const auto v = to_double(f);
      if (!v) {
        numeric = false;
        break;
      }
      values.push_back(*v);
    }
    if (!numeric) {
      if (!saw_data && lineno == 1) {
        if (fields.size() != 4 && fields.size() != 13) {
          throw Error(ErrorCode::ParseError, "header must have 4 or 13 columns");
        }
        columns = fields.size();
        continue;
      }
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": non-numeric field");
    }
    if (columns == 0) columns = values.size();
    if (values.size() != columns || (columns != 4 && columns != 13)) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected " +
                                             std::to_string(columns == 0 ? 4 : columns) +
                                             " columns, got " + std::to_string(values.size()));
    }
    saw_data = true;
    out.s.push_back(values[0]);
    out.psi.emplace_back(values[1], values[2], values[3]);
    if (columns == 13) {
      FrenetFrame f{{values[4], values[5], values[6]},
                    {values[7], values[8], values[9]},
                    {values[10], values[11], values[12]},
                    0};
      f.epsilon = metric(f.N, f.N) > 0.0 ? 1 : -1;
      frames.push_back(f);
    }
  }
  if (!saw_data) throw Error(ErrorCode::ParseError, "no samples in CSV input");
  if (columns == 13) {
    out.epsilon = frames.front().epsilon;
    out.orientation = frame_orientation(frames.front());
    out.frames = std::move(frames);
  }
  try {
    out.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return out;
}

void write_json(std::ostream& out, const CurveSamples& samples, const std::optional<CurveMeta>& meta,
                bool with_frames) {
  samples.validate();
  out << "{\n";
  if (meta) {
    out << "  \"meta\": {\"case\": \"" << meta->helix_case << "\", \"epsilon\": " << meta->epsilon
        << ", \"m\": " << format_number(meta->m) << ", \"n\": " << format_number(meta->n)
        << ", \"phi\": " << format_number(meta->phi) << "},\n";
  }
  if (samples.epsilon) out << "  \"epsilon\": " << *samples.epsilon << ",\n";
  if (samples.orientation) out << "  \"orientation\": " << *samples.orientation << ",\n";
  out << "  \"s\": [";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out << (i ? "," : "") << format_number(samples.s[i]);
  }
  out << "],\n  \"psi\": [";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out << (i ? ",\n    " : "\n    ");
    write_vec(out, samples.psi[i]);
  }
  out << "\n  ]";
  if (with_frames && samples.frames) {
    out << ",\n  \"frames\": [";
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& f = (*samples.frames)[i];
      out << (i ? ",\n    " : "\n    ") << "{\"T\": ";
      write_vec(out, f.T);
      out << ", \"N\": ";
      write_vec(out, f.N);
      out << ", \"B\": ";
      write_vec(out, f.B);
      out << '}';
    }
    out << "\n  ]";
  }
  out << "\n}\n";
}

JsonCurve read_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  JsonCurve out;
  try {
    if (!j.contains("s") || !j.contains("psi")) {
      throw Error(ErrorCode::ParseError, "JSON curve needs \"s\" and \"psi\"");
    }
    out.samples.s = j.at("s").get<std::vector<double>>();
    for (const auto& p : j.at("psi")) out.samples.psi.push_back(vec_from_json(p));
    if (j.contains("epsilon")) out.samples.epsilon = j.at("epsilon").get<int>();
    if (j.contains("orientation")) out.samples.orientation = j.at("orientation").get<int>();
    if (j.contains("meta")) {
      const auto& m = j.at("meta");
      out.meta = CurveMeta{m.at("case").get<std::string>(), m.at("epsilon").get<int>(),
                           m.at("m").get<double>(), m.at("n").get<double>(), m.at("phi").get<double>()};
      if (!out.samples.epsilon) out.samples.epsilon = out.meta->epsilon;
    }
    if (j.contains("frames")) {
      std::vector<FrenetFrame> frames;
      for (const auto& f : j.at("frames")) {
        FrenetFrame fr{vec_from_json(f.at("T")), vec_from_json(f.at("N")), vec_from_json(f.at("B")), 0};
        fr.epsilon = metric(fr.N, fr.N) > 0.0 ? 1 : -1;
        frames.push_back(fr);
      }
      if (!frames.empty()) {
        if (!out.samples.epsilon) out.samples.epsilon = frames.front().epsilon;
        if (!out.samples.orientation) out.samples.orientation = frame_orientation(frames.front());
      }
      out.samples.frames = std::move(frames);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON curve: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (out.samples.s.empty()) throw Error(ErrorCode::ParseError, "no samples in JSON input");
  try {
    out.samples.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return out;
}

void save_curve(const std::filesystem::path& path, const CurveSamples& samples,
                const std::optional<CurveMeta>& meta, bool with_frames) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  if (format_for(path) == CurveFormat::Json) {
    write_json(out, samples, meta, with_frames);
  } else {
    write_csv(out, samples, with_frames);
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

CurveSamples load_curve(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  if (format_for(path) == CurveFormat::Json) return read_json(in).samples;
  return read_csv(in);
}

}  // namespace lorhelix
