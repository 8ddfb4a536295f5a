#include <doctest.h>

#include <random>

#include "touchstone/baselines.hpp"

using namespace touchstone;
using baselines::ActionMatchConfig;
using trace::Action;
using trace::ActionKind;

namespace {

Action random_action(std::mt19937& rng) {
  std::uniform_int_distribution<int> kind(0, 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (kind(rng)) {
    case 0: return Action::make_click(unit(rng), unit(rng));
    case 1:
      return Action::make_swipe(unit(rng), unit(rng), unit(rng), unit(rng), 200);
    case 2: {
      const char* words[] = {"alpha", "beta", "gamma"};
      return Action::make_type(words[kind(rng) % 3]);
    }
    case 3: return Action::make(ActionKind::press_home);
    case 4: return Action::make(ActionKind::press_back);
    case 5: return Action::make(ActionKind::status_complete);
    default: return Action::make(ActionKind::status_impossible);
  }
}

// dynamic-programming subsequence oracle
bool dp_subsequence(const std::vector<Action>& gt, const std::vector<Action>& exec,
                    const ActionMatchConfig& cfg) {
  std::vector<std::vector<char>> reach(
      gt.size() + 1, std::vector<char>(exec.size() + 1, 0));
  for (std::size_t j = 0; j <= exec.size(); ++j) reach[0][j] = 1;
  for (std::size_t i = 1; i <= gt.size(); ++i) {
    for (std::size_t j = 1; j <= exec.size(); ++j) {
      reach[i][j] = reach[i][j - 1] ||
                    (reach[i - 1][j - 1] &&
                     baselines::action_equal(gt[i - 1], exec[j - 1], cfg));
    }
  }
  return reach[gt.size()][exec.size()];
}

int sign_of(double v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

}  // namespace

TEST_CASE("action_equal: clicks compare by normalized distance") {
  ActionMatchConfig cfg;
  CHECK(cfg.click_tolerance == 0.14);

  Action a = Action::make_click(0.50, 0.50);
  CHECK(baselines::action_equal(a, a, cfg));
  CHECK(baselines::action_equal(a, Action::make_click(0.55, 0.50), cfg));
  CHECK_FALSE(baselines::action_equal(a, Action::make_click(0.70, 0.50), cfg));

  ActionMatchConfig strict;
  strict.click_tolerance = 0.0;
  CHECK_FALSE(baselines::action_equal(a, Action::make_click(0.51, 0.50), strict));
  CHECK(baselines::action_equal(a, Action::make_click(0.50, 0.50), strict));
}

TEST_CASE("action_equal: swipes compare by direction sign pattern") {
  ActionMatchConfig cfg;
  Action up_short = Action::make_swipe(0.5, 0.6, 0.5, 0.4, 100);
  Action up_long = Action::make_swipe(0.5, 0.9, 0.5, 0.1, 900);
  Action down = Action::make_swipe(0.5, 0.4, 0.5, 0.6, 100);
  CHECK(baselines::action_equal(up_short, up_long, cfg));
  CHECK_FALSE(baselines::action_equal(up_short, down, cfg));

  // randomized cross-check against the sign-pattern definition
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    Action s1 = Action::make_swipe(unit(rng), unit(rng), unit(rng), unit(rng), 100);
    Action s2 = Action::make_swipe(unit(rng), unit(rng), unit(rng), unit(rng), 700);
    bool expected =
        sign_of(s1.lift_x - s1.touch_x) == sign_of(s2.lift_x - s2.touch_x) &&
        sign_of(s1.lift_y - s1.touch_y) == sign_of(s2.lift_y - s2.touch_y);
    CHECK(baselines::action_equal(s1, s2, cfg) == expected);
  }
}

TEST_CASE("action_equal: typed text byte equality by default") {
  ActionMatchConfig cfg;
  CHECK(baselines::action_equal(Action::make_type("hello"),
                                Action::make_type("hello"), cfg));
  CHECK_FALSE(baselines::action_equal(Action::make_type("hello"),
                                      Action::make_type("hello world"), cfg));
  CHECK_FALSE(baselines::action_equal(Action::make_type("Hello"),
                                      Action::make_type("hello"), cfg));

  ActionMatchConfig relaxed;
  relaxed.text_exact = false;
  CHECK(baselines::action_equal(Action::make_type("Hello  World"),
                                Action::make_type("hello world"), relaxed));
}

TEST_CASE("action_equal: reflexive and symmetric under the default config") {
  ActionMatchConfig cfg;
  std::mt19937 rng(23);
  for (int i = 0; i < 300; ++i) {
    Action a = random_action(rng);
    Action b = random_action(rng);
    CHECK(baselines::action_equal(a, a, cfg));
    CHECK(baselines::action_equal(a, b, cfg) == baselines::action_equal(b, a, cfg));
  }
}

TEST_CASE("stepwise_match: order and length sensitive") {
  ActionMatchConfig cfg;
  Action a = Action::make_click(0.1, 0.1);
  Action b = Action::make_click(0.9, 0.9);
  std::vector<Action> seq{a, b};

  CHECK(baselines::stepwise_match(seq, seq, cfg));
  std::vector<Action> swapped{b, a};
  CHECK_FALSE(baselines::stepwise_match(seq, swapped, cfg));

  std::vector<Action> longer{a, b, Action::make(ActionKind::status_complete)};
  CHECK_FALSE(baselines::stepwise_match(seq, longer, cfg));  // gt prefix of exec
}

TEST_CASE("lcs_match: subsequence semantics") {
  ActionMatchConfig cfg;
  Action a = Action::make_click(0.1, 0.1);
  Action b = Action::make_click(0.9, 0.9);
  Action x = Action::make_type("noise");

  std::vector<Action> gt{a, b};
  std::vector<Action> with_noise{a, x, b};
  std::vector<Action> reversed{b, a};
  CHECK(baselines::lcs_match(gt, with_noise, cfg));
  CHECK_FALSE(baselines::lcs_match(gt, reversed, cfg));
}

TEST_CASE("lcs_match: agrees with the DP oracle on 200 random instances") {
  ActionMatchConfig cfg;
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> gt_len(0, 6);
  std::uniform_int_distribution<int> exec_len(0, 10);
  for (int i = 0; i < 200; ++i) {
    std::vector<Action> gt, exec;
    for (int k = gt_len(rng); k > 0; --k) gt.push_back(random_action(rng));
    for (int k = exec_len(rng); k > 0; --k) exec.push_back(random_action(rng));
    CHECK(baselines::lcs_match(gt, exec, cfg) == dp_subsequence(gt, exec, cfg));
  }
}

TEST_CASE("stepwise implies lcs; lcs is monotone under insertion") {
  ActionMatchConfig cfg;
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> len(0, 6);
  std::uniform_int_distribution<int> pos(0, 100);
  for (int i = 0; i < 200; ++i) {
    std::vector<Action> gt, exec;
    for (int k = len(rng); k > 0; --k) gt.push_back(random_action(rng));
    for (int k = len(rng); k > 0; --k) exec.push_back(random_action(rng));
    if (baselines::stepwise_match(gt, exec, cfg)) {
      CHECK(baselines::lcs_match(gt, exec, cfg));
    }
    if (baselines::lcs_match(gt, exec, cfg)) {
      std::vector<Action> grown = exec;
      grown.insert(grown.begin() + pos(rng) % (grown.size() + 1), random_action(rng));
      CHECK(baselines::lcs_match(gt, grown, cfg));
    }
  }
}
