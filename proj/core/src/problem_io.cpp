#include "boxdual/problem_io.hpp"

#include "boxdual/error.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace boxdual::io {

namespace {

struct Token {
  std::string_view text;
  std::size_t column = 0;
};

struct Line {
  std::size_t number = 0;
  std::vector<Token> tokens;
};

constexpr std::array<std::string_view, 4> kBlocks = {"matrix", "bounds", "data",
                                                      "noise_bounds"};

bool is_block_keyword(std::string_view word) {
  for (const auto keyword : kBlocks) {
    if (word == keyword) return true;
  }
  return false;
}

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() &&
             (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) {
        ++i;
      }
      const std::size_t begin = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' &&
             raw[i] != '\r') {
        ++i;
      }
      if (i > begin) line.tokens.push_back({raw.substr(begin, i - begin), begin + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

double parse_real(const Line& line, const Token& token) {
  double value = 0.0;
  const char* first = token.text.data();
  const char* last = first + token.text.size();
  // from_chars rejects a leading '+', which hand-written files may contain.
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line.number, token.column,
                     "expected a number, found '" + std::string(token.text) + "'");
  }
  return value;
}

Index parse_size(const Line& line, const Token& token) {
  long long value = 0;
  const char* first = token.text.data();
  const char* last = first + token.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || value < 1) {
    throw ParseError(line.number, token.column,
                     "expected a positive integer, found '" +
                         std::string(token.text) + "'");
  }
  return static_cast<Index>(value);
}

struct Block {
  const Line* header = nullptr;
  std::vector<const Line*> body;
};

Matrix read_rows(const Block& block, Index rows, Index cols) {
  const std::string name(block.header->tokens.front().text);
  if (static_cast<Index>(block.body.size()) != rows) {
    throw ParseError(block.header->number, 0,
                     "block '" + name + "' has " +
                         std::to_string(block.body.size()) +
                         " lines, expected " + std::to_string(rows));
  }
  Matrix values(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Line& line = *block.body[static_cast<std::size_t>(r)];
    if (static_cast<Index>(line.tokens.size()) != cols) {
      const std::size_t column =
          static_cast<Index>(line.tokens.size()) > cols
              ? line.tokens[static_cast<std::size_t>(cols)].column
              : 0;
      throw ParseError(line.number, column,
                       "block '" + name + "' expects " + std::to_string(cols) +
                           " values per line, found " +
                           std::to_string(line.tokens.size()));
    }
    for (Index c = 0; c < cols; ++c) {
      values(r, c) = parse_real(line, line.tokens[static_cast<std::size_t>(c)]);
    }
  }
  return values;
}

BoxDomain read_box(const Block& block, Index size) {
  const Matrix pairs = read_rows(block, size, 2);
  return BoxDomain(pairs.col(0), pairs.col(1));
}

void append_line(std::string& out, std::string_view text) {
  out.append(text);
  out.push_back('\n');
}

void append_values(std::string& out, const Eigen::Ref<const Eigen::RowVectorXd>& row) {
  for (Index c = 0; c < row.size(); ++c) {
    if (c > 0) out.push_back(' ');
    out += format_number(row[c]);
  }
  out.push_back('\n');
}

void render_base(std::string& out, const InverseProblem& problem) {
  append_line(out, "dimensions " + std::to_string(problem.rows()) + " " +
                       std::to_string(problem.cols()));
  append_line(out, "matrix");
  for (Index r = 0; r < problem.rows(); ++r) {
    append_values(out, problem.matrix().row(r));
  }
  append_line(out, "bounds");
  for (Index j = 0; j < problem.cols(); ++j) {
    append_line(out, format_number(problem.domain().lower()[j]) + " " +
                         format_number(problem.domain().upper()[j]));
  }
  append_line(out, "data");
  for (Index i = 0; i < problem.rows(); ++i) {
    append_line(out, format_number(problem.data()[i]));
  }
}

// Writes a "name index value" section in text reports or one CSV row per
// entry in delimited reports.
void emit_vector(std::ostringstream& out, ReportFormat format,
                 std::string_view name, const Eigen::Ref<const Vector>& values) {
  if (format == ReportFormat::kText) {
    out << name << ":\n";
    for (Index i = 0; i < values.size(); ++i) {
      out << "  " << (i + 1) << ' ' << format_number(values[i]) << '\n';
    }
  } else {
    for (Index i = 0; i < values.size(); ++i) {
      out << name << ',' << (i + 1) << ',' << format_number(values[i]) << '\n';
    }
  }
}

void emit_scalar(std::ostringstream& out, ReportFormat format,
                 std::string_view name, std::string_view value) {
  if (format == ReportFormat::kText) {
    out << name << ": " << value << '\n';
  } else {
    out << name << ",," << value << '\n';
  }
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 40> buffer{};
  const int written = std::snprintf(buffer.data(), buffer.size(), "%.17g", value);
  return std::string(buffer.data(), static_cast<std::size_t>(written));
}

ParsedProblem parse_problem(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) {
    throw ParseError(1, 0, "empty problem file");
  }

  const Line& first = lines.front();
  if (first.tokens.front().text != "dimensions") {
    throw ParseError(first.number, first.tokens.front().column,
                     "expected 'dimensions <M> <N>' first");
  }
  if (first.tokens.size() != 3) {
    throw ParseError(first.number, 0, "'dimensions' takes exactly two values");
  }
  const Index rows = parse_size(first, first.tokens[1]);
  const Index cols = parse_size(first, first.tokens[2]);

  std::map<std::string_view, Block> blocks;
  Block* current = nullptr;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    const Token& head = line.tokens.front();
    if (is_block_keyword(head.text)) {
      if (line.tokens.size() != 1) {
        throw ParseError(line.number, line.tokens[1].column,
                         "keyword '" + std::string(head.text) +
                             "' must be alone on its line");
      }
      if (blocks.count(head.text) != 0) {
        throw ParseError(line.number, head.column,
                         "duplicate block '" + std::string(head.text) + "'");
      }
      current = &blocks[head.text];
      current->header = &line;
      continue;
    }
    if (head.text == "dimensions") {
      throw ParseError(line.number, head.column, "duplicate 'dimensions'");
    }
    if (current == nullptr) {
      throw ParseError(line.number, head.column,
                       "expected a block keyword (matrix, bounds, data, "
                       "noise_bounds)");
    }
    current->body.push_back(&line);
  }

  const std::size_t after_last = lines.back().number + 1;
  for (const std::string_view required : {"matrix", "bounds", "data"}) {
    if (blocks.count(required) == 0) {
      throw ParseError(after_last, 0,
                       "missing '" + std::string(required) + "' block");
    }
  }

  Matrix matrix = read_rows(blocks.at("matrix"), rows, cols);
  BoxDomain domain = read_box(blocks.at("bounds"), cols);
  Vector data = read_rows(blocks.at("data"), rows, 1).col(0);
  InverseProblem base(std::move(matrix), std::move(data), std::move(domain));

  if (const auto noise = blocks.find("noise_bounds"); noise != blocks.end()) {
    return NoisyInverseProblem(std::move(base), read_box(noise->second, rows));
  }
  return base;
}

ParsedProblem read_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot open problem file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str());
}

std::string render_problem(const InverseProblem& problem) {
  std::string out;
  render_base(out, problem);
  return out;
}

std::string render_problem(const NoisyInverseProblem& problem) {
  std::string out;
  render_base(out, problem.base());
  append_line(out, "noise_bounds");
  const BoxDomain& noise = problem.noise_domain();
  for (Index i = 0; i < noise.size(); ++i) {
    append_line(out, format_number(noise.lower()[i]) + " " +
                         format_number(noise.upper()[i]));
  }
  return out;
}

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "text") return ReportFormat::kText;
  if (name == "delimited") return ReportFormat::kDelimited;
  return std::nullopt;
}

SolutionReport make_report(const Solution& solution) {
  SolutionReport report;
  report.solution = solution;
  report.primal_size = solution.primal.size();
  return report;
}

SolutionReport make_report(const NoisySolution& solution) {
  SolutionReport report;
  report.solution = solution.joint;
  report.primal_size = solution.primal.size();
  report.noise = solution.noise;
  return report;
}

std::string render_report(const SolutionReport& report, ReportFormat format) {
  const Solution& s = report.solution;
  std::ostringstream out;
  if (format == ReportFormat::kDelimited) out << "field,index,value\n";
  emit_scalar(out, format, "status", to_string(s.status));
  emit_scalar(out, format, "iterations", std::to_string(s.iterations));
  emit_scalar(out, format, "gradient_steps", std::to_string(s.gradient_steps));
  emit_scalar(out, format, "dual_value", format_number(s.dual_value));
  emit_scalar(out, format, "primal_value", format_number(s.primal_value));
  emit_scalar(out, format, "gap", format_number(s.gap));
  emit_scalar(out, format, "residual", format_number(s.residual));
  emit_vector(out, format, "x", s.primal.head(report.primal_size));
  if (report.noise) emit_vector(out, format, "noise", *report.noise);
  emit_vector(out, format, "lambda", s.multiplier);
  if (report.sensitivity) {
    emit_scalar(out, format, "sensitivity_condition",
                format_number(report.sensitivity->conditioning));
    emit_vector(out, format, "dx_dy_diagonal",
                report.sensitivity->primal_jacobian_diagonal);
  } else if (report.sensitivity_unavailable) {
    emit_scalar(out, format, "sensitivity_unavailable",
                *report.sensitivity_unavailable);
  }
  return out.str();
}

std::string render_reconstruction(const markov::ReconstructionCase& input,
                                  const markov::Reconstruction& result,
                                  ReportFormat format) {
  std::ostringstream out;
  const Solution& s = result.solution;
  const Index n = input.chain.states();
  const char separator = format == ReportFormat::kText ? ' ' : ',';

  if (format == ReportFormat::kText) {
    out << "chain: " << markov::to_string(input.chain.kind) << '\n'
        << "states: " << n << '\n'
        << "observed: " << input.observed_rows.size() << '\n'
        << "bound: " << format_number(input.bound) << '\n'
        << "status: " << to_string(s.status) << '\n'
        << "iterations: " << s.iterations << '\n'
        << "residual: " << format_number(s.residual) << '\n'
        << "gap: " << format_number(s.gap) << '\n'
        << "closed_form_deviation: "
        << format_number(result.closed_form_deviation) << '\n';
    if (result.sup_error) {
      out << "sup_error_vs_true: " << format_number(*result.sup_error) << '\n';
    }
    if (result.divergence_to_truth) {
      out << "bregman_to_true: " << format_number(*result.divergence_to_truth)
          << '\n';
    }
    out << '\n';
  }

  out << "state" << separator << "true_f" << separator << "reconstructed_f"
      << separator << "gap_to_lower" << separator << "gap_to_upper" << '\n';
  for (Index j = 0; j < n; ++j) {
    out << (j + 1) << separator
        << (input.true_f ? format_number((*input.true_f)[j]) : std::string("NA"))
        << separator << format_number(result.f[j]) << separator
        << format_number(result.f[j]) << separator
        << format_number(input.bound - result.f[j]) << '\n';
  }
  return out.str();
}

}  // namespace boxdual::io
