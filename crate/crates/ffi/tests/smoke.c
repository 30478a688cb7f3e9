#include <stdio.h>
#include <string.h>

#include "daerealize.h"

#define CHECK(cond)                                                    \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond,   \
              dr_last_error());                                        \
      return 1;                                                        \
    }                                                                  \
  } while (0)

int main(void) {
  const char *doc =
      "{\"states\": [\"x1\", \"x2\"], \"rates\": [\"x2^2\", \"x1*u\"], "
      "\"output\": \"x2\"}";
  DrSystem *sys = NULL;
  DrEquation *eq = NULL, *io = NULL;
  bool holds = false;
  CHECK(dr_system_from_json(doc, &sys) == DR_STATUS_OK);
  CHECK(dr_equation_parse("u*y'' = y^2*u^2 + y'*u'", NULL, &eq) == DR_STATUS_OK);
  CHECK(dr_verify(sys, eq, &holds) == DR_STATUS_OK && holds);
  CHECK(dr_io_equation(sys, &io) == DR_STATUS_OK);

  char *text = NULL;
  CHECK(dr_equation_to_string(io, &text) == DR_STATUS_OK);
  printf("%s\n", text);
  dr_string_free(text);

  DrOutcome outcome;
  DrSystem *found = NULL;
  CHECK(dr_realize(eq, DR_MODE_FIRST_ORDER, &outcome, &found) == DR_STATUS_INVALID);
  CHECK(strlen(dr_last_error()) > 0 && found == NULL);

  DrEquation *affine = NULL;
  CHECK(dr_equation_parse("u*y' - y*u' - u^3", NULL, &affine) == DR_STATUS_OK);
  CHECK(dr_realize(affine, DR_MODE_INPUT_AFFINE, &outcome, &found) == DR_STATUS_OK);
  CHECK(outcome == DR_OUTCOME_REALIZED && found != NULL);
  CHECK(dr_system_to_json(found, &text) == DR_STATUS_OK);
  printf("%s\n", text);
  dr_string_free(text);

  CHECK(dr_system_from_json("{", &sys) == DR_STATUS_PARSE);
  dr_system_free(found);
  dr_equation_free(affine);
  dr_equation_free(io);
  dr_equation_free(eq);
  dr_system_free(sys);
  return 0;
}
