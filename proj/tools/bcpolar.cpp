// bcpolar: compute and verify (b,c)-inverses, spectral idempotents and
// classical generalized inverses from JSON problem files, and run the
// property suite.
//
//   bcpolar invert FILE     compute the inverse named by "operation"
//   bcpolar verify FILE     evaluate the check named by "operation"
//   bcpolar suite [flags]   run the property suite, print the report
//
// FILE may be "-" for stdin. Exit codes: 0 success/verified, 1 not
// invertible/not verified, 2 input error, 3 suite failure or starvation,
// 4 internal error (a library identity check failed).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "bcpolar.hpp"

namespace {

using namespace bcpolar;

enum ExitCode { kOk = 0, kNegative = 1, kInputError = 2, kSuiteFailure = 3, kInternalError = 4 };

json read_document(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
}

class Checks {
 public:
  void add(const std::string& identity, bool holds) {
    list_.push_back({{"identity", identity}, {"holds", holds}});
    all_ = all_ && holds;
  }
  bool all() const { return all_; }
  const json& list() const { return list_; }

 private:
  json list_ = json::array();
  bool all_ = true;
};

template <ExactField F>
class Problem {
 public:
  Problem(const json& doc, F field) : doc_(doc), field_(std::move(field)) {
    if (!doc_.is_object()) throw parse_error("problem file must be a JSON object");
  }

  const F& field() const { return field_; }

  Matrix<F> matrix(const char* name) const {
    if (!doc_.contains(name)) throw parse_error(std::string("operation needs matrix \"") + name + "\"");
    return matrix_from_json(doc_[name], field_);
  }

  std::size_t count(const char* name, std::size_t fallback) const {
    if (!doc_.contains(name)) return fallback;
    if (!doc_[name].is_number_unsigned()) throw parse_error(std::string("\"") + name + "\" must be a non-negative integer");
    return doc_[name].get<std::size_t>();
  }

 private:
  const json& doc_;
  F field_;
};

std::string operation_of(const json& doc) {
  if (!doc.is_object() || !doc.contains("operation") || !doc["operation"].is_string())
    throw parse_error("problem file needs a string \"operation\"");
  return doc["operation"].get<std::string>();
}

/// The field named in the file, or else the field of matrix "a".
AnyField field_of(const json& doc) {
  if (doc.is_object() && doc.contains("field")) return field_from_json(doc["field"]);
  if (doc.is_object() && doc.contains("a")) return matrix_field(doc["a"]);
  throw parse_error("problem file names no field and has no matrix \"a\"");
}

template <ExactField F>
void check_bc_inverse(Checks& checks, const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c, const Matrix<F>& y,
                      const Matrix<F>& p, const Matrix<F>& q) {
  const auto ca = c * a;
  const auto ab = a * b;
  checks.add("y a b = b", y * ab == b);
  checks.add("c a y = c", ca * y == c);
  checks.add("y a y = y", y * a * y == y);
  checks.add("y in b R", solve_right(b, y).has_value());
  checks.add("y in R c", solve_left(c, y).has_value());
  checks.add("p = y a", p == y * a);
  checks.add("q = a y", q == a * y);
  checks.add("p^2 = p", is_idempotent(p));
  checks.add("q^2 = q", is_idempotent(q));
  checks.add("p in b R c a", in_set(p, b, ca));
  checks.add("q in a b R c", in_set(q, ab, c));
  checks.add("p b = b", p * b == b);
  checks.add("c q = c", c * q == c);
  checks.add("c a p = c a", ca * p == ca);
  checks.add("q a b = a b", q * ab == ab);
}

template <ExactField F>
void check_dual(Checks& checks, const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c, const Matrix<F>& r,
                const Matrix<F>& s) {
  const auto ac = a * c;
  const auto ba = b * a;
  checks.add("r^2 = r", is_idempotent(r));
  checks.add("s^2 = s", is_idempotent(s));
  checks.add("r in a c R b", in_set(r, ac, b));
  checks.add("s in c R b a", in_set(s, c, ba));
  checks.add("b r = b", b * r == b);
  checks.add("s c = c", s * c == c);
  checks.add("r a c = a c", r * ac == ac);
  checks.add("b a s = b a", ba * s == ba);
}

template <ExactField F>
void check_polar(Checks& checks, const Matrix<F>& a, const Matrix<F>& p) {
  checks.add("p^2 = p", is_idempotent(p));
  checks.add("p in comm^2(a)", in_double_commutant(p, a));
  checks.add("a + p invertible", is_invertible(a + p));
  checks.add("a p nilpotent", is_nilpotent(a * p));
}

template <ExactField F>
void check_polar_along(Checks& checks, const Matrix<F>& a, const Matrix<F>& d, const Matrix<F>& p,
                       const Matrix<F>& q) {
  const auto da = d * a;
  const auto ad = a * d;
  const auto one = identity_like(a);
  checks.add("p in comm(d a)", commutes(p, da));
  checks.add("p d = d", p * d == d);
  checks.add("1 + d a - p invertible", is_invertible(one + da - p));
  checks.add("q in comm(a d)", commutes(q, ad));
  checks.add("d q = d", d * q == d);
  checks.add("1 + a d - q invertible", is_invertible(one + ad - q));
}

template <ExactField F>
json bc_result_json(const BcResult<F>& r) {
  return {{"y", matrix_to_json(r.inverse)}, {"p", matrix_to_json(r.left_idempotent)},
          {"q", matrix_to_json(r.right_idempotent)}};
}

struct Outcome {
  json body;
  int exit_code;
};

Outcome finish(json body, const std::string& outcome, bool success, const Checks* checks) {
  body["outcome"] = outcome;
  if (checks) {
    body["verification"] = checks->list();
    body["verified"] = checks->all();
    success = success && checks->all();
  }
  return {std::move(body), success ? kOk : kNegative};
}

template <ExactField F>
Outcome invert(const std::string& op, const Problem<F>& pr) {
  json body{{"operation", op}, {"field", field_to_json(pr.field())}};
  Checks checks;

  if (op == "bc-inverse" || op == "bott-duffin") {
    const auto a = pr.matrix("a"), b = pr.matrix("b"), c = pr.matrix("c");
    const auto res = op == "bc-inverse" ? bc_inverse(a, b, c) : bott_duffin(a, b, c);
    if (!res) return finish(body, "not (b,c)-invertible", false, nullptr);
    body["result"] = bc_result_json(*res);
    check_bc_inverse(checks, a, b, c, res->inverse, res->left_idempotent, res->right_idempotent);
    return finish(body, "(b,c)-invertible", true, &checks);
  }
  if (op == "dual-bc-polar") {
    const auto a = pr.matrix("a"), b = pr.matrix("b"), c = pr.matrix("c");
    const auto res = dual_bc_polar(a, b, c);
    if (!res) return finish(body, "not dually (b,c)-polar", false, nullptr);
    body["result"] = {{"y", matrix_to_json(res->inverse)},
                      {"r", matrix_to_json(res->right_idempotent)},
                      {"s", matrix_to_json(res->left_idempotent)}};
    check_dual(checks, a, b, c, res->right_idempotent, res->left_idempotent);
    checks.add("r = a y", res->right_idempotent == a * res->inverse);
    checks.add("s = y a", res->left_idempotent == res->inverse * a);
    return finish(body, "dually (b,c)-polar", true, &checks);
  }
  if (op == "inverse-along") {
    const auto a = pr.matrix("a"), d = pr.matrix("d");
    const auto res = inverse_along(a, d);
    if (!res) return finish(body, "not invertible along d", false, nullptr);
    body["result"] = bc_result_json(*res);
    check_bc_inverse(checks, a, d, d, res->inverse, res->left_idempotent, res->right_idempotent);
    check_polar_along(checks, a, d, res->left_idempotent, res->right_idempotent);
    return finish(body, "invertible along d", true, &checks);
  }
  if (op == "power-polar") {
    const auto a = pr.matrix("a"), b = pr.matrix("b"), c = pr.matrix("c");
    const std::size_t k = pr.count("k", 2);
    body["k"] = k;
    const auto res = power_polar(a, b, c, k);
    if (!res) return finish(body, "hypotheses not satisfied or not (b,c)-invertible", false, nullptr);
    body["result"] = bc_result_json(*res);
    check_bc_inverse(checks, a.pow(k), b.pow(k), c.pow(k), res->inverse, res->left_idempotent,
                     res->right_idempotent);
    return finish(body, "(b^k,c^k)-polar", true, &checks);
  }
  if (op == "drazin") {
    const auto a = pr.matrix("a");
    const auto res = drazin(a);
    const auto& x = res.d_inverse;
    body["result"] = {{"d_inverse", matrix_to_json(x)},
                      {"index", res.index},
                      {"spectral_idempotent", matrix_to_json(res.spectral_idempotent)}};
    checks.add("x a x = x", x * a * x == x);
    checks.add("a x = x a", commutes(a, x));
    checks.add("a^(k+1) x = a^k", a.pow(res.index + 1) * x == a.pow(res.index));
    check_polar(checks, a, res.spectral_idempotent);
    return finish(body, "Drazin inverse", true, &checks);
  }
  if (op == "group-inverse") {
    const auto a = pr.matrix("a");
    const auto x = group_inverse(a);
    if (!x) return finish(body, "no group inverse", false, nullptr);
    body["result"] = {{"x", matrix_to_json(*x)}};
    checks.add("a x a = a", a * *x * a == a);
    checks.add("x a x = x", *x * a * *x == *x);
    checks.add("a x = x a", commutes(a, *x));
    return finish(body, "group invertible", true, &checks);
  }
  if (op == "moore-penrose") {
    const auto a = pr.matrix("a");
    const auto x = moore_penrose(a);
    body["result"] = {{"x", matrix_to_json(x)}};
    checks.add("a x a = a", a * x * a == a);
    checks.add("x a x = x", x * a * x == x);
    checks.add("(a x)^T = a x", (a * x).transpose() == a * x);
    checks.add("(x a)^T = x a", (x * a).transpose() == x * a);
    return finish(body, "Moore-Penrose inverse", true, &checks);
  }
  if (op == "inner-inverse") {
    const auto a = pr.matrix("a");
    const auto x = inner_inverse(a);
    body["result"] = {{"x", matrix_to_json(x)}};
    checks.add("a x a = a", a * x * a == a);
    return finish(body, "inner inverse", true, &checks);
  }
  throw parse_error("unknown invert operation '" + op + "'");
}

template <ExactField F>
Outcome verify(const std::string& op, const Problem<F>& pr) {
  json body{{"operation", op}, {"field", field_to_json(pr.field())}};
  Checks checks;

  if (op == "bc-polar") {
    const auto a = pr.matrix("a"), b = pr.matrix("b"), c = pr.matrix("c");
    const auto p = pr.matrix("p"), q = pr.matrix("q");
    detail::require_square_family<F>({&a, &b, &c, &p, &q}, "bc-polar");
    const auto ca = c * a;
    const auto ab = a * b;
    checks.add("p^2 = p", is_idempotent(p));
    checks.add("q^2 = q", is_idempotent(q));
    checks.add("p in b R c a", in_set(p, b, ca));
    checks.add("q in a b R c", in_set(q, ab, c));
    checks.add("p b = b", p * b == b);
    checks.add("c q = c", c * q == c);
    checks.add("c a p = c a", ca * p == ca);
    checks.add("q a b = a b", q * ab == ab);
    return finish(body, checks.all() ? "verified" : "not verified", true, &checks);
  }
  if (op == "dual-bc-polar") {
    const auto a = pr.matrix("a"), b = pr.matrix("b"), c = pr.matrix("c");
    const auto r = pr.matrix("r"), s = pr.matrix("s");
    detail::require_square_family<F>({&a, &b, &c, &r, &s}, "dual-bc-polar");
    check_dual(checks, a, b, c, r, s);
    return finish(body, checks.all() ? "verified" : "not verified", true, &checks);
  }
  if (op == "polar") {
    const auto a = pr.matrix("a"), p = pr.matrix("p");
    detail::require_square_family<F>({&a, &p}, "polar");
    check_polar(checks, a, p);
    return finish(body, checks.all() ? "verified" : "not verified", true, &checks);
  }
  if (op == "polar-along") {
    const auto a = pr.matrix("a"), d = pr.matrix("d"), p = pr.matrix("p");
    detail::require_square_family<F>({&a, &d, &p}, "polar-along");
    const auto da = d * a;
    checks.add("p^2 = p", is_idempotent(p));
    checks.add("p in comm(d a)", commutes(p, da));
    checks.add("p d = d", p * d == d);
    checks.add("1 + d a - p invertible", is_invertible(identity_like(a) + da - p));
    return finish(body, checks.all() ? "verified" : "not verified", true, &checks);
  }
  if (op == "operator") {
    const auto a = pr.matrix("a"), b = pr.matrix("b"), c = pr.matrix("c");
    const auto v = operator_characterization(a, b, c);
    body["verdicts"] = {{"ranges_and_nullspaces", v.invertible}, {"polar", v.polar}, {"projectors", v.projectors}};
    if (v.p) body["P"] = matrix_to_json(v.p->matrix);
    if (v.q) body["Q"] = matrix_to_json(v.q->matrix);
    if (v.blocks)
      body["blocks"] = {{"QAP", matrix_to_json(v.blocks->qap)},
                        {"QA(I-P)", matrix_to_json(v.blocks->qa_ip)},
                        {"(I-Q)AP", matrix_to_json(v.blocks->iq_ap)},
                        {"(I-Q)A(I-P)", matrix_to_json(v.blocks->iq_a_ip)}};
    checks.add("verdicts agree", v.agree());
    if (v.invertible) {
      const auto y = bc_inverse(a, b, c);
      checks.add("P = y a", y && v.p->matrix == y->left_idempotent);
      checks.add("Q = a y", y && v.q->matrix == y->right_idempotent);
    }
    return finish(body, checks.all() ? "verified" : "not verified", true, &checks);
  }
  if (op == "along-operator") {
    const auto a = pr.matrix("a"), b = pr.matrix("b");
    const auto v = along_operator_characterization(a, b);
    body["verdicts"] = {{"invertible_along", v.invertible_along},
                        {"polar_along", v.polar_along},
                        {"projectors", v.projectors},
                        {"restriction", v.restriction},
                        {"single_projector", v.single_projector}};
    checks.add("verdicts agree", v.agree());
    return finish(body, checks.all() ? "verified" : "not verified", true, &checks);
  }
  if (op == "perturbation") {
    const auto a = pr.matrix("a"), b = pr.matrix("b"), c = pr.matrix("c"), d = pr.matrix("d");
    const auto v = perturbation_conditions(a, d, b, c);
    body["verdicts"] = {{"same_idempotents", v.same_idempotents},
                        {"membership_block", v.membership_block},
                        {"intersection_block", v.intersection_block},
                        {"polar_with_anchors", v.polar_with_anchors}};
    checks.add("verdicts agree", v.all_equal());
    return finish(body, checks.all() ? "verified" : "not verified", true, &checks);
  }
  throw parse_error("unknown verify operation '" + op + "'");
}

template <class Fn>
int run_file(const std::string& path, Fn&& fn) {
  const json doc = read_document(path);
  const std::string op = operation_of(doc);
  const Outcome out = std::visit([&](const auto& field) { return fn(op, Problem(doc, field)); }, field_of(doc));
  std::cout << out.body.dump(2) << '\n';
  return out.exit_code;
}

struct SuiteFlags {
  std::uint64_t seed = 1;
  std::string field = "Fp:7";
  std::size_t max_dim = 4;
  std::size_t trials = 200;
  std::size_t threads = 0;
  bool exhaustive = false;
  std::vector<std::string> only;
};

int run_suite_command(const SuiteFlags& flags) {
  suite::Report report;
  if (flags.exhaustive) {
    report = suite::run_exhaustive_f2(flags.seed, flags.only, flags.threads);
  } else {
    const suite::SuiteOptions opts{flags.seed, flags.max_dim, flags.trials, flags.only, flags.threads};
    report = std::visit([&](const auto& field) { return suite::run_suite(field, opts); }, field_from_flag(flags.field));
  }
  const json out{{"report", report.to_json()}, {"wall_time_seconds", report.wall_seconds}};
  std::cout << out.dump(2) << '\n';
  return report.ok() ? kOk : kSuiteFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact (b,c)-inverses, spectral idempotents and their property suite"};
  app.require_subcommand(1);

  std::string file;
  auto* invert_cmd = app.add_subcommand("invert", "compute the inverse named by the file's \"operation\"");
  invert_cmd->add_option("file", file, "problem file, or - for stdin")->required();
  auto* verify_cmd = app.add_subcommand("verify", "evaluate the check named by the file's \"operation\"");
  verify_cmd->add_option("file", file, "problem file, or - for stdin")->required();

  SuiteFlags flags;
  auto* suite_cmd = app.add_subcommand("suite", "run the randomized or exhaustive property suite");
  suite_cmd->add_option("--seed", flags.seed, "master seed")->capture_default_str();
  suite_cmd->add_option("--field", flags.field, "Q or Fp:<p>")->capture_default_str();
  suite_cmd->add_option("--max-dim", flags.max_dim, "largest matrix size")->capture_default_str()->check(CLI::PositiveNumber);
  suite_cmd->add_option("--trials", flags.trials, "qualifying instances per property")->capture_default_str()->check(CLI::PositiveNumber);
  suite_cmd->add_option("--threads", flags.threads, "worker threads (0: all cores)")->capture_default_str();
  suite_cmd->add_option("--property", flags.only, "run only these property ids");
  suite_cmd->add_flag("--exhaustive-f2", flags.exhaustive, "enumerate all 2x2 matrices over F_2 instead of sampling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*invert_cmd)
      return run_file(file, [](const std::string& op, const auto& pr) { return invert(op, pr); });
    if (*verify_cmd)
      return run_file(file, [](const std::string& op, const auto& pr) { return verify(op, pr); });
    return run_suite_command(flags);
  } catch (const contract_violation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  }
}
