#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include <json.hpp>

#include "support.hpp"

using namespace dint;
using namespace dint::testing;

namespace {

const SignaturePtr kTX = make_signature({"t", "x"}, 1);

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(DINT_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const std::string kSessions = DINT_SESSIONS;

}  // namespace

TEST(Parser, ReorderedTermsParseEqual) { EXPECT_EQ(op(kTX, "dt+3*t^2*x+1"), op(kTX, "dt+1+3*x*t^2")); }

TEST(Parser, NoncommutativeWrittenOrder) {
  EXPECT_EQ(op(kTX, "dt*t"), op(kTX, "t*dt+1"));
  EXPECT_EQ(op(kTX, "t*dt").to_string(), "t*dt");
  EXPECT_EQ(op(kTX, "(dt+t)^2"), op(kTX, "dt*dt+dt*t+t*dt+t*t"));
}

TEST(Parser, ErrorsCarryPosition) {
  try {
    op(kTX, "dt+\n  3*$");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 5u);
  }
  EXPECT_THROW(op(kTX, "dz"), ParseError);
  EXPECT_THROW(op(kTX, "dt/x"), ParseError);
  EXPECT_THROW(op(kTX, "x^-1"), ParseError);
}

TEST(Parser, ParametersAndRationals) {
  const auto s = make_signature({"t", "x"}, 1, {"a", "b", "c"});
  const WF a = opf(s, "(a-c)/2*dx+b/3");
  EXPECT_EQ(a, opf(s, "a/2*dx-c/2*dx+1/3*b"));
  EXPECT_EQ(parse_coefficient<FieldElem>("(a^2-1)/(a+1)", s->params), parse_coefficient<FieldElem>("a-1", s->params));
}

TEST(Parser, Integrands) {
  const auto f = parse_integrand<Q>("x/(t+1)^2*exp(-t)", kTX);
  EXPECT_EQ(f, parse_integrand<Q>("exp(-t)*x/(t^2+2*t+1)", kTX));
  EXPECT_EQ(f.derivative(1), parse_integrand<Q>("exp(-t)/(t+1)^2", kTX));
  EXPECT_THROW(parse_integrand<Q>("exp(1/t)", kTX), std::invalid_argument);
}

TEST(Printer, RoundTripsReferenceStrings) {
  const auto s = make_signature({"t", "x", "y"}, 1, {"a", "b", "c"});
  for (const char* src : {"27*x^3*dx^2+54*x^2*dx+6*x+1", "-dt^2-3*dt-3", "(-x^2+x)*dx^2+((-a-b-1)*x+c)*dx-b*a",
                          "(t-1)*dx", "9*x*dx+10*y*dy+9", "-10*dx^9-x*dy^9", "-9*dx^10+y*dy^10+9*dy^9", "-t*dy^9",
                          "(-x^2+x)*dx^2+((-t+1)*dt+(-a-b-1)*x+c-1)*dx-b*a", "a/(a-b)*dx+1"}) {
    const WF a = opf(s, src);
    EXPECT_EQ(opf(s, asir_string(a)), a) << src;
    EXPECT_EQ(opf(s, a.to_string()), a) << src;
  }
}

TEST(Printer, AsirLayout) {
  const auto s = make_signature({"t", "x"}, 1, {"a", "b", "c"});
  EXPECT_EQ(asir_string(opf(s, "27*x^3*dx^2+54*x^2*dx+6*x+1")), "27*x^3*dx^2+54*x^2*dx+6*x+1");
  EXPECT_EQ(asir_string(opf(s, "-dt^2-3*dt-3")), "-dt^2-3*dt-3");
  EXPECT_EQ(asir_string(opf(s, "(-x^2+x)*dx^2+((-a-b-1)*x+c)*dx-b*a")), "(-x^2+x)*dx^2+((-a-b-1)*x+c)*dx-b*a");
  EXPECT_EQ(asir_string(opf(s, "(t-1)*dx")), "(t-1)*dx");
}

TEST(Cli, ExpCubicAsirIsByteExact) {
  const auto r = run_cli("integrate --vars t,x --int t --weight 1 --gens \"dt+1+3*x*t^2\",\"dx+t^3\" --inhomo --format asir");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "generic bfct : [[1,1],[s,1]]\nS0 : 0\nB_{S0} length : 1\n"
            "[[27*x^3*dx^2+54*x^2*dx+6*x+1],[[[[dt,-dt^2-3*dt-3]],1]]]\n");
}

TEST(Cli, JsonSchema) {
  const auto r = run_cli("integrate --session " + kSessions + "/airy_type.json --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["bfunction"]["s0"], 0);
  EXPECT_EQ(j["basis_size"], 1);
  EXPECT_EQ(j["generators"][0], "27*x^3*dx^2+54*x^2*dx+6*x+1");
  EXPECT_EQ(j["inhomo"][0][0]["var"], "t");
  EXPECT_EQ(j["inhomo"][0][0]["op"], "-dt^2-3*dt-3");
}

TEST(Cli, BfctWithParametersReportsAssumption) {
  const auto r = run_cli("bfct --session " + kSessions + "/gauss_hypergeometric.json");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("a-c+1 is not a non-negative integer"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("[s-a+c-1,1]"), std::string::npos) << r.out;
}

TEST(Cli, AnnExp) {
  const auto r = run_cli("ann-exp --g \"-t-x*t^3\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "dt+3*t^2*x+1\ndx+t^3\n");
}

TEST(Cli, ReordersIntegrationVariables) {
  const auto r = run_cli("integrate --vars x,t --int t --gens \"dt+1+3*x*t^2\",\"dx+t^3\" --format asir");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("[27*x^3*dx^2+54*x^2*dx+6*x+1]"), std::string::npos) << r.out;
}

TEST(Cli, BoundaryReport) {
  const auto r = run_cli("boundary --session " + kSessions + "/airy_type.json");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("= 1\n"), std::string::npos) << r.out;
}

TEST(Cli, VerifyExitCodes) {
  const std::string base = "verify --vars t,x --int t --gens \"dt+1+3*x*t^2\",\"dx+t^3\" ";
  EXPECT_EQ(run_cli(base + "--generator \"27*x^3*dx^2+54*x^2*dx+6*x+1\" --part \"t=-dt^2-3*dt-3\"").code, 0);
  EXPECT_EQ(run_cli(base + "--generator \"27*x^3*dx^2+54*x^2*dx+6*x+1\" --part \"t=dt\"").code, 3);
  EXPECT_EQ(run_cli(base).code, 0);
}

TEST(Cli, ValidationErrorsExitOne) {
  EXPECT_EQ(run_cli("integrate --vars t,x --int t --gens \"dt+\"").code, 1);
  EXPECT_EQ(run_cli("integrate --vars t,x --int q --gens dt").code, 1);
  EXPECT_EQ(run_cli("integrate --vars t,x --int t --weight 0 --gens dt").code, 1);
  EXPECT_EQ(run_cli("integrate --vars t,x --int t --gens dt --format yaml").code, 1);
  EXPECT_EQ(run_cli("frobnicate").code, 1);
  EXPECT_EQ(run_cli("integrate --session /nonexistent.json").code, 1);
}

TEST(Cli, HolonomyCheckExitsTwo) {
  EXPECT_EQ(run_cli("integrate --vars t,x --int t --gens dt --holonomy-check").code, 2);
}

TEST(Cli, SessionsRun) {
  for (const char* f : {"airy_type.json", "cubic_exponential.json", "gauss_hypergeometric.json"})
    EXPECT_EQ(run_cli("integrate --session " + kSessions + "/" + f).code, 0) << f;
}
