#include "framelab/frame_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace framelab {

namespace {

using nlohmann::json;

double number_at(const json& j, const std::string& where) {
  if (!j.is_number())
    fail(ErrorKind::ParseError, "expected a number at " + where);
  return j.get<double>();
}

Complex entry_at(const json& j, Field field, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array()) {
    if (field == Field::Real)
      fail(ErrorKind::ParseError,
           "complex entry at " + where + " in a real frame");
    if (j.size() != 2)
      fail(ErrorKind::ParseError,
           "complex entry at " + where + " must be [re, im]");
    return Complex(number_at(j[0], where + "[0]"),
                   number_at(j[1], where + "[1]"));
  }
  fail(ErrorKind::ParseError, "expected number or [re, im] at " + where);
}

}  // namespace

FrameSpec frame_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorKind::ParseError, "frame file must be a JSON object");
  if (!j.contains("field") || !j["field"].is_string())
    fail(ErrorKind::ParseError, "missing or invalid \"field\"");
  const std::string field_text = j["field"].get<std::string>();
  Field field;
  if (field_text == "real") field = Field::Real;
  else if (field_text == "complex") field = Field::Complex;
  else fail(ErrorKind::ParseError, "\"field\" must be \"real\" or \"complex\", got \"" + field_text + "\"");

  if (!j.contains("dim") || !j["dim"].is_number_integer())
    fail(ErrorKind::ParseError, "missing or invalid \"dim\"");
  const auto dim = j["dim"].get<Eigen::Index>();
  if (dim <= 0) fail(ErrorKind::ParseError, "\"dim\" must be positive");

  if (!j.contains("vectors") || !j["vectors"].is_array() || j["vectors"].empty())
    fail(ErrorKind::ParseError, "missing or empty \"vectors\"");
  const auto& rows = j["vectors"];
  const Eigen::Index m = static_cast<Eigen::Index>(rows.size());

  Mat vectors(dim, m);
  for (Eigen::Index r = 0; r < m; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    const std::string where = "vectors[" + std::to_string(r) + "]";
    if (!row.is_array())
      fail(ErrorKind::ParseError, where + " must be an array");
    if (static_cast<Eigen::Index>(row.size()) != dim)
      fail(ErrorKind::ParseError,
           where + " has " + std::to_string(row.size()) +
               " entries, expected dim = " + std::to_string(dim));
    for (Eigen::Index c = 0; c < dim; ++c) {
      const Complex z = entry_at(row[static_cast<std::size_t>(c)], field,
                                 where + "[" + std::to_string(c) + "]");
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        fail(ErrorKind::ParseError,
             where + "[" + std::to_string(c) + "] is not finite");
      vectors(c, r) = z;
    }
  }

  RealVec weights = RealVec::Ones(m);
  if (j.contains("weights")) {
    const auto& w = j["weights"];
    if (!w.is_array() || static_cast<Eigen::Index>(w.size()) != m)
      fail(ErrorKind::ParseError,
           "\"weights\" must list one value per vector (" + std::to_string(m) + ")");
    for (Eigen::Index r = 0; r < m; ++r)
      weights(r) = number_at(w[static_cast<std::size_t>(r)],
                             "weights[" + std::to_string(r) + "]");
  }

  std::string label;
  if (j.contains("label")) {
    if (!j["label"].is_string())
      fail(ErrorKind::ParseError, "\"label\" must be a string");
    label = j["label"].get<std::string>();
  }

  return make_frame(field, vectors, weights, label);
}

nlohmann::json frame_to_json(const FrameSpec& frame) {
  json j;
  j["field"] = field_name(frame.field);
  j["dim"] = frame.dim;
  json rows = json::array();
  for (Eigen::Index r = 0; r < frame.size(); ++r)
    rows.push_back(vector_to_json(frame.vectors.col(r), frame.field));
  j["vectors"] = rows;
  json w = json::array();
  for (Eigen::Index r = 0; r < frame.size(); ++r) w.push_back(frame.weights(r));
  j["weights"] = w;
  if (!frame.label.empty()) j["label"] = frame.label;
  return j;
}

FrameSpec parse_frame_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return frame_from_json(j);
}

FrameSpec load_frame_file(const std::string& path) {
  return parse_frame_text(read_text_file(path));
}

void write_frame_file(const FrameSpec& frame, const std::string& path) {
  write_text_file(path, frame_to_json(frame).dump(2) + "\n");
}

nlohmann::json vector_to_json(const Vec& x, Field field) {
  json row = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (field == Field::Real)
      row.push_back(x(i).real());
    else
      row.push_back(json::array({x(i).real(), x(i).imag()}));
  }
  return row;
}

Vec vector_from_json(const nlohmann::json& j, Field field) {
  if (!j.is_array()) fail(ErrorKind::ParseError, "vector must be a JSON array");
  Vec x(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    x(static_cast<Eigen::Index>(i)) =
        entry_at(j[i], field, "entry " + std::to_string(i));
  return x;
}

namespace {

// One scalar of a vector literal: "1", "-2.5", "0+1i", "1-2i", "3i".
Complex parse_scalar(std::string s, Field field) {
  std::string compact;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  if (compact.empty()) fail(ErrorKind::ParseError, "empty entry in vector literal");

  auto to_double = [](const std::string& t) {
    if (t == "+" || t.empty()) return 1.0;
    if (t == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "bad number \"" + t + "\" in vector literal");
    }
    if (used != t.size())
      fail(ErrorKind::ParseError, "bad number \"" + t + "\" in vector literal");
    return v;
  };

  if (compact.back() != 'i') return Complex(to_double(compact), 0.0);

  if (field == Field::Real)
    fail(ErrorKind::FieldMismatch,
         "imaginary entry \"" + compact + "\" in a real-field vector literal");

  const std::string body = compact.substr(0, compact.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t p = body.size(); p-- > 1;) {
    if ((body[p] == '+' || body[p] == '-') &&
        body[p - 1] != 'e' && body[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  if (split == std::string::npos) return Complex(0.0, to_double(body));
  return Complex(to_double(body.substr(0, split)),
                 to_double(body.substr(split)));
}

}  // namespace

Vec parse_vector_literal(const std::string& text, Field field) {
  std::string s = text;
  const auto first = s.find_first_not_of(" \t\r\n");
  const auto last = s.find_last_not_of(" \t\r\n");
  if (first == std::string::npos)
    fail(ErrorKind::ParseError, "empty vector literal");
  s = s.substr(first, last - first + 1);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    fail(ErrorKind::ParseError,
         "vector literal must be parenthesized, e.g. \"(1, 0+1i)\"");
  s = s.substr(1, s.size() - 2);

  std::vector<Complex> entries;
  std::string current;
  std::stringstream ss(s);
  while (std::getline(ss, current, ','))
    entries.push_back(parse_scalar(current, field));
  if (entries.empty())
    fail(ErrorKind::ParseError, "vector literal has no entries");

  Vec x(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i)
    x(static_cast<Eigen::Index>(i)) = entries[i];
  return x;
}

std::string magnitudes_csv(const FrameSpec& frame, const Vec& x) {
  check_vector(frame, x, "measurement input");
  std::ostringstream out;
  out << "j,mu,magnitude\n";
  char buf[64];
  for (Eigen::Index j = 0; j < frame.size(); ++j) {
    const double mag = std::abs(inner(x, frame.vectors.col(j)));
    out << j << ",";
    std::snprintf(buf, sizeof(buf), "%.17g", frame.weights(j));
    out << buf << ",";
    std::snprintf(buf, sizeof(buf), "%.17g", mag);
    out << buf << "\n";
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open \"" + path + "\" for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorKind::IoError, "failed reading \"" + path + "\"");
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot open \"" + path + "\" for writing");
  out << content;
  if (!out) fail(ErrorKind::IoError, "failed writing \"" + path + "\"");
}

}  // namespace framelab
