#include <stdio.h>
#include <string.h>

#include "obstructor.h"

#define CHECK(cond)                                                      \
    do {                                                                 \
        if (!(cond)) {                                                   \
            const char *e = obstructor_last_error();                     \
            fprintf(stderr, "line %d: %s (%s)\n", __LINE__, #cond,       \
                    e ? e : "no error");                                 \
            return 1;                                                    \
        }                                                                \
    } while (0)

int main(void) {
    ObstructorReport *r = NULL;
    uint64_t l0 = 0;
    bool ok = false;
    char *json = NULL;

    CHECK(obstructor_derive("PSO(10)", &r) == OBSTRUCTOR_STATUS_OK);
    CHECK(obstructor_report_l0(r, &l0) == OBSTRUCTOR_STATUS_OK && l0 == 4);
    CHECK(obstructor_report_json(r, &json) == OBSTRUCTOR_STATUS_OK);
    CHECK(strstr(json, "\"l0\":4") != NULL);
    obstructor_string_free(json);
    obstructor_report_free(r);

    CHECK(obstructor_prequantizable("PSO(10)", 8, 1, &ok) == OBSTRUCTOR_STATUS_OK && ok);
    CHECK(obstructor_prequantizable("PSO(10)", 2, 1, &ok) == OBSTRUCTOR_STATUS_OK && !ok);

    CHECK(obstructor_derive("SU(6)/Z4", &r) == OBSTRUCTOR_STATUS_PARSE_ERROR && r == NULL);
    CHECK(strstr(obstructor_last_error(), "4 does not divide 6") != NULL);

    printf("c smoke ok\n");
    return 0;
}
