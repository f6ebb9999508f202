#include "progen.hpp"

#include <vector>

namespace testsupport {

namespace {

struct Gen {
  Rng& rng;
  std::vector<std::string> cvars;       // concrete-valued variables
  std::vector<std::string> nvars;       // nondet-fed, unguarded so far
  std::vector<std::string> noise;       // write-only nondet noise
  int loops_emitted = 0;
  int errors_emitted = 0;
  std::string out;
  int indent = 1;

  explicit Gen(Rng& r) : rng(r) {}

  void line(const std::string& text) {
    for (int i = 0; i < indent; ++i) out += "    ";
    out += text;
    out += "\n";
  }

  std::string const_lit() {
    int value = rng.range(-3, 3);
    if (value < 0) return "(" + std::to_string(value) + ")";
    return std::to_string(value);
  }

  const std::string& any_cvar() {
    return cvars[static_cast<std::size_t>(rng.range(
        0, static_cast<int>(cvars.size()) - 1))];
  }

  // Arithmetic over concrete variables and small constants.
  std::string cexpr(int depth) {
    if (depth <= 0 || rng.chance(40))
      return rng.chance(50) ? any_cvar() : const_lit();
    static const char* ops[] = {" + ", " - ", " * "};
    return cexpr(depth - 1) + ops[rng.range(0, 2)] + cexpr(depth - 1);
  }

  std::string noise_expr() {
    std::string base = rng.chance(60) ? "nondet()" : cexpr(1);
    if (rng.chance(40)) base += " + nondet()";
    return base;
  }

  std::string ccond() {
    static const char* rel[] = {"==", "!=", "<", "<=", ">", ">="};
    std::string rhs = rng.chance(60) ? const_lit() : any_cvar();
    return any_cvar() + " " + rel[rng.range(0, 5)] + " " + rhs;
  }

  // Consumes one nondet-fed variable for its single equality guard.
  std::string ncond() {
    std::size_t pick = static_cast<std::size_t>(
        rng.range(0, static_cast<int>(nvars.size()) - 1));
    std::string var = nvars[pick];
    nvars.erase(nvars.begin() + static_cast<std::ptrdiff_t>(pick));
    return var + " == " + std::to_string(rng.range(0, 3));
  }

  void error_stmt() {
    line("error();");
    ++errors_emitted;
  }

  void assign_stmt() {
    if (!noise.empty() && rng.chance(25)) {
      line(noise[static_cast<std::size_t>(rng.range(
               0, static_cast<int>(noise.size()) - 1))] +
           " = " + noise_expr() + ";");
      return;
    }
    line(any_cvar() + " = " + cexpr(2) + ";");
  }

  void if_stmt(int depth, bool inside_loop) {
    bool use_nguard = !inside_loop && !nvars.empty() && rng.chance(45);
    std::string cond = use_nguard ? ncond() : ccond();
    if (rng.chance(20)) cond += rng.chance(50) ? " && " + ccond()
                                               : " || " + ccond();
    line("if (" + cond + ") {");
    ++indent;
    block(depth - 1, inside_loop, true);
    --indent;
    if (rng.chance(40)) {
      line("} else {");
      ++indent;
      block(depth - 1, inside_loop, true);
      --indent;
    }
    line("}");
  }

  void while_stmt(int depth) {
    std::string counter = "i" + std::to_string(loops_emitted++);
    int start = rng.range(0, 1);
    int bound = start + rng.range(1, 5);
    line("int " + counter + " = " + std::to_string(start) + ";");
    line("while (" + counter + " < " + std::to_string(bound) + ") {");
    ++indent;
    block(depth - 1, true, true);
    line(counter + " = " + counter + " + 1;");
    --indent;
    line("}");
  }

  void block(int depth, bool inside_loop, bool allow_error) {
    int stmts = rng.range(1, 3);
    for (int i = 0; i < stmts; ++i) {
      int roll = rng.range(0, 99);
      if (allow_error && errors_emitted < 2 && roll < 18) {
        error_stmt();
        return;  // code after error() would be unreachable anyway
      }
      if (depth > 0 && roll < 45) {
        if_stmt(depth, inside_loop);
      } else if (depth > 0 && !inside_loop && loops_emitted < 2 &&
                 roll < 60) {
        while_stmt(depth);
      } else {
        assign_stmt();
      }
    }
  }
};

}  // namespace

std::string generate_program(Rng& rng) {
  Gen gen(rng);
  gen.out += "int main() {\n";

  int num_c = rng.range(2, 3);
  for (int i = 0; i < num_c; ++i) {
    std::string name = "c" + std::to_string(i);
    gen.line("int " + name + " = " + gen.const_lit() + ";");
    gen.cvars.push_back(name);
  }
  int num_n = rng.range(0, 2);
  for (int i = 0; i < num_n; ++i) {
    std::string name = "n" + std::to_string(i);
    gen.line("int " + name + " = nondet();");
    gen.nvars.push_back(name);
  }
  if (rng.chance(50)) {
    gen.line("int t0 = nondet();");
    gen.noise.push_back("t0");
  }

  gen.block(3, false, true);
  if (gen.errors_emitted == 0) {
    // Guarantee a reachability question: guard an error call behind either a
    // concrete comparison or a remaining nondet equality.
    std::string cond = (!gen.nvars.empty() && rng.chance(50)) ? gen.ncond()
                                                              : gen.ccond();
    gen.line("if (" + cond + ") {");
    ++gen.indent;
    gen.error_stmt();
    --gen.indent;
    gen.line("}");
  }

  gen.line("return 0;");
  gen.out += "}\n";
  return gen.out;
}

}  // namespace testsupport
