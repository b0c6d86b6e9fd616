#include <stdio.h>
#include <string.h>

#include "cyclic_wonderful.h"

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      const char *msg = cw_last_error_message();                      \
      fprintf(stderr, "failed: %s (%s)\n", #cond, msg ? msg : "-");   \
      return 1;                                                       \
    }                                                                 \
  } while (0)

int main(void) {
  CwFan *fan = NULL;
  size_t cones = 0;
  CHECK(cw_fan_build(2, 3, 0, &fan) == CW_STATUS_OK);
  CHECK(cw_fan_maximal_cone_count(fan, &cones) == CW_STATUS_OK);
  CHECK(cones == 48);

  char *chain = NULL;
  CHECK(cw_fan_locate_point(fan, "(0,0,0)", &chain) == CW_STATUS_OK);
  CHECK(strcmp(chain, "") == 0);
  cw_string_free(chain);
  cw_fan_free(fan);

  uint64_t betti[8];
  size_t len = 0;
  CHECK(cw_betti_closed_form(2, 3, betti, 8, &len) == CW_STATUS_OK);
  CHECK(len == 4 && betti[1] == 23);

  CHECK(cw_fan_build(9, 5, 0, &fan) == CW_STATUS_FEASIBILITY);
  CHECK(fan == NULL);
  CHECK(strstr(cw_last_error_message(), "50000") != NULL);

  printf("ok %s\n", cw_version());
  return 0;
}
