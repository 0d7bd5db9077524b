from zetakit.cli import main

main()
