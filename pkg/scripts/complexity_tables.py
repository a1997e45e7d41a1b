"""Print the four action/state count tables with exact integers alongside."""

from totalbotwar import complexity as cx


def main() -> None:
    for name in cx.TABLES:
        print(f"== {name} ==")
        print(cx.format_table(name))
        for label, counts in cx.table(name):
            print(f"  {label}: " + ", ".join(str(c) for c in counts))
        print()


if __name__ == "__main__":
    main()
